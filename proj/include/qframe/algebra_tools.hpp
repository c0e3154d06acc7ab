#ifndef QFRAME_ALGEBRA_TOOLS_HPP
#define QFRAME_ALGEBRA_TOOLS_HPP

#include "qframe/tensor_core.hpp"

#include <json.hpp>

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qframe {

/// A qubit described by its observables: a support projector P together with encoded
/// X, Y, Z acting on the range of P. The ambient space may be much larger than the qubit.
struct EncodedQubitFrame {
  std::string label;
  ComplexMatrix support;
  ComplexMatrix x;
  ComplexMatrix y;
  ComplexMatrix z;

  std::size_t ambient_dim() const { return static_cast<std::size_t>(support.rows()); }
};

/// The unital associative algebra generated by a set of operators and their adjoints.
class OperatorAlgebra {
public:
  explicit OperatorAlgebra(std::vector<ComplexMatrix> generators);

  std::size_t ambient_dim() const { return ambient_dim_; }
  const std::vector<ComplexMatrix>& generators() const { return generators_; }

private:
  std::size_t ambient_dim_;
  std::vector<ComplexMatrix> generators_;
};

struct IsotypicBlock {
  std::size_t multiplicity; ///< m_i: dimension of the factor on which the algebra acts trivially
  std::size_t irrep_dim;    ///< d_i: dimension of the irreducible factor

  auto operator<=>(const IsotypicBlock&) const = default;
};

/// Blocks of S = (+)_i C_i (x) D_i, sorted ascending by (multiplicity, irrep_dim).
struct IsotypicSummary {
  std::vector<IsotypicBlock> blocks;

  std::size_t ambient_dim() const;   ///< sum m_i d_i
  std::size_t commutant_dim() const; ///< sum m_i^2
  bool contains(std::size_t multiplicity, std::size_t irrep_dim) const;
};

/// Raised when a random central element fails to separate the isotypic blocks. Retrying with
/// another seed is the expected response.
class IsotypicSplitError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Check {
  std::string name;
  double max_deviation;
  bool pass;
};

/// Named numerical checks. A check passes iff its deviation is at most the report tolerance,
/// so every check is phrased as "distance from the ideal", with 0 the ideal value.
class VerificationReport {
public:
  VerificationReport(std::string label, double tolerance, std::uint64_t seed = 0);

  /// Records a check; returns its pass flag. NaN deviations fail.
  bool add(std::string name, double max_deviation);

  /// Appends the checks of another report, prefixing their names with `prefix`.
  void append(const VerificationReport& other, const std::string& prefix = "");

  const std::string& label() const { return label_; }
  double tolerance() const { return tolerance_; }
  std::uint64_t seed() const { return seed_; }
  const std::vector<Check>& checks() const { return checks_; }
  bool all_pass() const;
  const Check& find(const std::string& name) const;

  nlohmann::ordered_json to_json() const;

private:
  std::string label_;
  double tolerance_;
  std::uint64_t seed_;
  std::vector<Check> checks_;
};

nlohmann::ordered_json to_json(const Check& check);

/// Hermiticity, the Pauli commutation and anti-commutation rules restricted to the support,
/// O^2 = P, support containment, and an even support trace of at least 2.
VerificationReport verify_frame(const EncodedQubitFrame& frame, double tol = kDefaultTolerance);

/// Hilbert-Schmidt orthonormal basis of {M : [M, G] = [M, G^dagger] = 0 for every generator},
/// computed as the nullspace of the stacked linear commutation constraints.
std::vector<ComplexMatrix> commutant_basis(const OperatorAlgebra& alg);

/// Orthonormal basis for the span of all words of length <= max_word_length in the generators
/// and their adjoints, including the empty word (identity).
std::vector<ComplexMatrix> generated_algebra_basis(const OperatorAlgebra& alg,
                                                   std::size_t max_word_length = 4);

/// Rank of a set of operators viewed as vectors in C^(n*n).
std::size_t span_dimension(const std::vector<ComplexMatrix>& ops);

/// Isotypic structure of the generated algebra from a random Hermitian element of its center.
IsotypicSummary isotypic_decomposition(const OperatorAlgebra& alg, std::uint64_t seed);

/// Deviation of [O, G] over O in {X, Y, Z} and every generator G, one check per observable.
VerificationReport frame_commutes_with(const EncodedQubitFrame& frame, const OperatorAlgebra& alg,
                                       double tol = kDefaultTolerance);

/// <psi|O|psi> or tr(rho O). Throws std::domain_error for non-Hermitian O or if the imaginary
/// residue exceeds tol.
double expectation(const ComplexMatrix& op, const PureState& state, double tol = kDefaultTolerance);
double expectation(const ComplexMatrix& op, const DensityOperator& rho,
                   double tol = kDefaultTolerance);

/// The abstract qubit: P = I_2 with the Pauli matrices.
EncodedQubitFrame pauli_frame();

nlohmann::ordered_json to_json(const IsotypicSummary& summary);

} // namespace qframe

#endif
