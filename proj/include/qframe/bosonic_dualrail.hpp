#ifndef QFRAME_BOSONIC_DUALRAIL_HPP
#define QFRAME_BOSONIC_DUALRAIL_HPP

#include "qframe/algebra_tools.hpp"
#include "qframe/tensor_core.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace qframe::bosonic {

/// Truncated Fock space of an even number of modes, each holding at most `cutoff` bosons.
/// Modes are numbered 1..num_modes; mode 1 is the most significant tensor factor.
class FockConfig {
public:
  FockConfig(std::size_t num_modes, std::size_t cutoff);

  std::size_t num_modes() const { return num_modes_; }
  std::size_t cutoff() const { return cutoff_; }
  std::size_t mode_dim() const { return cutoff_ + 1; }
  std::size_t ambient_dim() const { return ambient_dim_; }

  std::size_t index_of(const std::vector<std::size_t>& occupations) const;
  std::vector<std::size_t> occupations_of(std::size_t index) const;

  /// Throws std::out_of_range unless 1 <= k <= num_modes.
  void check_mode(std::size_t k) const;

private:
  std::size_t num_modes_;
  std::size_t cutoff_;
  std::size_t ambient_dim_;
};

/// Product number state |n_1 ... n_2n>.
struct FockBasisState {
  std::vector<std::size_t> occupations;

  /// "|n1 n2 ... n2n⟩"
  std::string to_string() const;
};

using ModePair = std::pair<std::size_t, std::size_t>;

ComplexMatrix annihilation(const FockConfig& config, std::size_t k);
ComplexMatrix creation(const FockConfig& config, std::size_t k);
ComplexMatrix number(const FockConfig& config, std::size_t k);

PureState fock_state(const FockConfig& config, const std::vector<std::size_t>& occupations);

/// Projector onto n_k + n_k' = 1 on the pair, identity on every other mode.
ComplexMatrix dual_rail_projector(const FockConfig& config, std::size_t k, std::size_t kp);

/// Z = (n_k' - n_k) P, X = (a_k^dag a_k' + a_k a_k'^dag) P, Y = -i Z X.
EncodedQubitFrame dual_rail_frame(const FockConfig& config, std::size_t k, std::size_t kp);

/// exp(-i phi n_k)
ComplexMatrix phase_shifter(const FockConfig& config, std::size_t k, double phi);

/// exp(theta (e^{i phi} a_k^dag a_l - e^{-i phi} a_k a_l^dag))
ComplexMatrix beam_splitter(const FockConfig& config, std::size_t k, std::size_t l, double theta,
                            double phi);

/// Ideal nonlinear sign gate on mode k: amplitudes with n_k >= 2 change sign.
ComplexMatrix ns_gate(const FockConfig& config, std::size_t k);

/// BS^dag NS_a NS_b BS, with the beam splitter between the first modes of the two pairs.
ComplexMatrix csign(const FockConfig& config, ModePair q1_modes, ModePair q2_modes,
                    double theta_bs, double phi_bs);

/// Product of the pair projectors; throws std::invalid_argument for overlapping pairs.
ComplexMatrix logical_projector(const FockConfig& config, const std::vector<ModePair>& pairs);

/// 1 - <psi|P_logical|psi>
double leakage(const PureState& state, const FockConfig& config,
               const std::vector<ModePair>& pairs);

/// Pairs (1,2), (3,4), ... covering every mode.
std::vector<ModePair> default_pairs(const FockConfig& config);

/// Pair i is |01> for bit 0 and |10> for bit 1.
PureState prepare_logical(const FockConfig& config, const std::vector<int>& bits);

/// Columns are the logical basis states |b_1 ... b_n>_L in binary order.
ComplexMatrix logical_basis(const FockConfig& config);

/// U restricted to the logical space, in the basis of logical_basis().
ComplexMatrix restrict_to_logical(const FockConfig& config, const ComplexMatrix& op);

/// Smallest entrywise deviation of `actual` from e^{i g} target over global phases g, with
/// the phase fixed by the largest-modulus entry of the target.
double deviation_up_to_phase(const ComplexMatrix& actual, const ComplexMatrix& target);

struct DetectionResult {
  std::size_t outcome;
  PureState post_state;
  double probability;
};

/// Projective photon counting on mode k, sampled from the Born distribution.
DetectionResult photodetect(const PureState& state, const FockConfig& config, std::size_t k,
                            std::uint64_t seed);

/// Born probabilities of every photon count 0..cutoff on mode k.
std::vector<double> photon_count_distribution(const PureState& state, const FockConfig& config,
                                              std::size_t k);

/// Largest deviation of P (n_k + n_k') = (n_k + n_k') P = P (n_k + n_k') P over all mode pairs.
double pair_number_identity_deviation(const FockConfig& config);

struct AngleScanPoint {
  double theta;
  double deviation; ///< logical c-sign deviation from diag(1,1,1,-1) up to phase
};

/// Logical c-sign deviation over `steps` evenly spaced angles in [0, pi/2].
std::vector<AngleScanPoint> csign_angle_scan(std::size_t steps);

/// Every bosonic check at the given cutoff (>= 2). trials = 0 skips the randomized checks.
VerificationReport suite(std::size_t cutoff, std::size_t trials, std::uint64_t seed, double tol);

} // namespace qframe::bosonic

#endif
