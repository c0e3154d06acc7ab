#ifndef QFRAME_COLLECTIVE_NOISE_HPP
#define QFRAME_COLLECTIVE_NOISE_HPP

#include "qframe/algebra_tools.hpp"
#include "qframe/tensor_core.hpp"

#include <json.hpp>

#include <array>
#include <cstdint>
#include <string>
#include <utility>

// Three spin-1/2 particles under collective noise. |0> is spin up, so S_z|000> = +3/2 |000>,
// and spin 1 is the most significant bit of the computational index.
namespace qframe::collective {

struct CollectiveSpinSystem {
  std::size_t n_spins;
  ComplexMatrix sx;
  ComplexMatrix sy;
  ComplexMatrix sz;
  ComplexMatrix s2; ///< Casimir S_x^2 + S_y^2 + S_z^2

  std::array<const ComplexMatrix*, 3> generators() const { return {&sx, &sy, &sz}; }
  OperatorAlgebra algebra() const { return OperatorAlgebra({sx, sy, sz}); }
};

/// S_alpha = sum_i sigma_alpha^(i) / 2 on n_spins spins.
CollectiveSpinSystem total_spin_ops(std::size_t n_spins = 3);

struct JointKernel {
  std::size_t dimension;        ///< number of singular values below the threshold
  double largest_null_value;    ///< largest singular value counted as zero (0 if none)
  double smallest_nonzero_value;
  double threshold;
};

/// States annihilated by every S_alpha (rotation-invariant states), from the singular values of
/// the stacked generators. Threshold 1e-8.
JointKernel joint_kernel(std::size_t n_spins);

/// No three-spin state is invariant; two spins have one (the singlet), four spins have two.
VerificationReport no_invariant_state_check(double tol = kDefaultTolerance);

enum class BasisFlavor { singlet_triplet, omega };

BasisFlavor flavor_from_string(const std::string& name);
std::string to_string(BasisFlavor flavor);

/// Four vectors |lambda>_q (x) |s_z> spanning the S = 1/2 subspace. Column 2*lambda + s of
/// `columns` holds the vector with s = 0 for s_z = +1/2 and s = 1 for s_z = -1/2, so the
/// columns are the Q (x) D product basis with Q the first factor.
struct ProtectedBasis {
  BasisFlavor flavor;
  ComplexMatrix columns; ///< 8 x 4

  ComplexVector vector(int lambda, int sz_index) const;
  nlohmann::ordered_json to_json() const;
};

ProtectedBasis protected_basis(BasisFlavor flavor);

struct Scalars {
  ComplexMatrix s12;
  ComplexMatrix s23;
  ComplexMatrix s31;
};

/// s_ij = X_i X_j + Y_i Y_j + Z_i Z_j
Scalars scalars();

/// Swap of spins 1 and 2, (1 + s12) / 2.
ComplexMatrix swap12();

/// sum over eps_abc sigma_a^(1) sigma_b^(2) sigma_c^(3)
ComplexMatrix tau123();

/// 1/2 - (s12 + s23 + s31) / 6, the projector onto S = 1/2.
ComplexMatrix protected_projector();

/// Observables built from rotation scalars. Omega: X = E12 P, Y = -sqrt3 (s23 - s31) P / 6,
/// Z = [X, Y] / 2i. Singlet-triplet: X = sqrt3 (s23 - s31) P / 6, Z = -E12 P, Y = [Z, X] / 2i.
EncodedQubitFrame noiseless_frame(BasisFlavor flavor);

/// S_alpha in protected-basis coordinates, written as 1 (x) sigma(alpha).
struct BlockForm {
  std::array<ComplexMatrix, 3> sigma; ///< 2 x 2, for x, y, z
  double block_deviation;             ///< max |B^dag S_alpha B - 1 (x) sigma(alpha)|
};

BlockForm collective_block_form(const ProtectedBasis& basis);

/// Frame commutation with S_alpha, expectation invariance under random collective rotations
/// exp(-i theta . S), and the 1 (x) sigma(alpha) block form. trials = 0 skips the random part.
VerificationReport noiseless_invariance_suite(std::size_t trials, std::uint64_t seed,
                                              double tol = kDefaultTolerance);

/// Embeds |psi><psi| (x) rho_gauge into the S = 1/2 subspace through the chosen basis.
DensityOperator embed_protected(const ComplexVector& psi_q, const DensityOperator& rho_gauge,
                                BasisFlavor flavor = BasisFlavor::omega);

/// Reduced states of a three-spin density operator supported on S = 1/2: keep = 0 for the
/// protected qubit, keep = 1 for the gauge factor.
DensityOperator reduce_protected(const DensityOperator& rho, std::size_t keep,
                                 BasisFlavor flavor = BasisFlavor::omega);

/// Purity of the protected-qubit factor of |psi><psi| (x) rho_gauge; 1 for any gauge state.
double purity_of_protected_qubit(const ComplexVector& psi_q, const DensityOperator& rho_gauge,
                                 BasisFlavor flavor = BasisFlavor::omega);

/// Purity of the gauge factor of the same embedded state.
double purity_of_gauge(const ComplexVector& psi_q, const DensityOperator& rho_gauge,
                       BasisFlavor flavor = BasisFlavor::omega);

/// Frames on the s_z = +1/2 and s_z = -1/2 halves of the S = 1/2 subspace.
std::pair<EncodedQubitFrame, EncodedQubitFrame>
exchange_sector_frames(BasisFlavor flavor = BasisFlavor::omega);

struct BasisChange {
  ComplexMatrix qubit_unitary;    ///< 2 x 2, acts on the Q factor only
  ComplexMatrix ambient_unitary;  ///< 8 x 8, identity outside S = 1/2
  double residual;                ///< max deviation of the conjugated omega frame
};

/// Unitary on the Q factor carrying the omega frame onto the singlet-triplet frame.
BasisChange basis_change_between_flavors();

/// |~0>_q (x) |+1/2>, the singlet of spins 1 and 2 with spin 3 up.
PureState prepare_initial_state();

/// Singlet and triplet projectors of spins 1 and 2: (1 - E12)/2 and (1 + E12)/2.
std::pair<ComplexMatrix, ComplexMatrix> singlet_triplet_readout();

/// Static checks plus noiseless_invariance_suite.
VerificationReport suite(std::size_t trials, std::uint64_t seed, double tol);

} // namespace qframe::collective

#endif
