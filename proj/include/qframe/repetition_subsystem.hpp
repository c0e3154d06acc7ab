#ifndef QFRAME_REPETITION_SUBSYSTEM_HPP
#define QFRAME_REPETITION_SUBSYSTEM_HPP

#include "qframe/algebra_tools.hpp"
#include "qframe/tensor_core.hpp"

#include <json.hpp>

#include <array>
#include <cstdint>
#include <string>
#include <vector>

// Three-qubit bit-flip code viewed as a subsystem. Qubit 1 is the most significant bit of the
// 8-dim computational index. Errors E_0 = 1, E_1 = X_1, E_2 = X_2, E_3 = X_3.
namespace qframe::repetition {

inline constexpr std::size_t kPhysicalDim = 8;
inline constexpr std::size_t kErrorCount = 4;

/// Completely positive map rho -> sum_k K_k rho K_k^dagger.
struct KrausChannel {
  std::vector<ComplexMatrix> kraus;

  DensityOperator apply(const DensityOperator& rho) const;
  /// max |sum_k K_k^dagger K_k - 1|
  double trace_preservation_deviation() const;
};

/// Physical space -> Q (x) E with Q (x) E index = 4 q + e. The syndrome-space basis index e
/// follows the syndrome table order (00, 10, 11, 01).
struct SubsystemIso {
  ComplexMatrix unitary;
  std::array<std::string, kErrorCount> syndrome_labels;

  /// Coordinates of a physical state in Q (x) E.
  ComplexVector to_factors(const ComplexVector& physical) const;
  /// op expressed on Q (x) E: U op U^dagger.
  ComplexMatrix conjugate(const ComplexMatrix& op) const;
  /// Label "|q> (x) |m1m2>" of a factor-basis index.
  std::string label_of(std::size_t factor_index) const;
};

/// c0|000> + c1|111>; throws std::invalid_argument unless |c0|^2 + |c1|^2 = 1.
PureState encode(Complex c0, Complex c1, double tol = kDefaultTolerance);

/// Logical code basis vectors |0_L> = |000>, |1_L> = |111>.
ComplexVector logical_state(int i);

ComplexMatrix error_operator(std::size_t a);

/// |v_a^i> = E_a |i_L>
ComplexVector error_basis_vector(std::size_t a, int i);

/// M1 = Z1 Z2, M2 = Z2 Z3.
std::array<ComplexMatrix, 2> stabilizer_generators();

/// Two-character syndrome: bit j is 1 iff E_a anti-commutes with M_j.
std::string syndrome_of(std::size_t a);

/// Syndrome table as a 4-row JSON array of {"error", "syndrome"}.
nlohmann::ordered_json syndrome_table_json();

/// R_a = E_a sum_i |v_a^i><v_a^i|
KrausChannel recovery_channel();

SubsystemIso subsystem_iso_Q();

/// Factorization from the joint eigenvectors of L = Z1, M1, M2, labels |l> (x) |m1 m2>.
/// Eigenvector phases make the overlap with the computational basis real and positive.
SubsystemIso subsystem_iso_Qprime();

/// Z_q = sum_a E_a Z_C E_a, X_q = sum_a E_a X_C E_a, Y_q = -i Z_q X_q, support = 1.
EncodedQubitFrame frame_from_errors();

/// Generators {E_b R_a : a, b in 0..3}.
OperatorAlgebra noise_recovery_algebra();

/// Expectation invariance of the frame under error/recovery words on random encoded states.
/// trials = 0 gives an empty report.
VerificationReport invariance_suite(std::size_t trials, std::uint64_t seed,
                                    double tol = kDefaultTolerance);

/// Static checks plus invariance_suite.
VerificationReport suite(std::size_t trials, std::uint64_t seed, double tol);

} // namespace qframe::repetition

#endif
