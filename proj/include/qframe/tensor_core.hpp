#ifndef QFRAME_TENSOR_CORE_HPP
#define QFRAME_TENSOR_CORE_HPP

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace qframe {

using Complex = std::complex<double>;

/// Dense complex operator, row-major. Every operator in the library is one of these.
using ComplexMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kDefaultTolerance = 1e-9;
inline constexpr Complex kI{0.0, 1.0};

/// Thrown when operand shapes do not fit together.
class DimensionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Normalized state vector.
class PureState {
public:
  /// Throws std::invalid_argument if the Euclidean norm differs from 1 by more than tol.
  explicit PureState(ComplexVector amplitudes, double tol = kDefaultTolerance);

  /// Rescales a nonzero vector to unit norm.
  static PureState normalized(ComplexVector amplitudes);

  std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }
  const ComplexVector& amplitudes() const { return amplitudes_; }
  Complex operator[](std::size_t i) const { return amplitudes_(static_cast<Eigen::Index>(i)); }

private:
  ComplexVector amplitudes_;
};

/// Hermitian, positive semidefinite, unit-trace operator.
class DensityOperator {
public:
  /// Validates Hermiticity, trace and the smallest eigenvalue against tol.
  explicit DensityOperator(ComplexMatrix matrix, double tol = kDefaultTolerance);

  static DensityOperator from_pure(const PureState& state);

  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }
  const ComplexMatrix& matrix() const { return matrix_; }

  /// tr(rho^2)
  double purity() const;

private:
  ComplexMatrix matrix_;
};

ComplexMatrix identity(std::size_t n);
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

/// Computational basis vector e_index of length dim.
ComplexVector basis_vector(std::size_t dim, std::size_t index);

// Tensor factor 0 is the most significant index: |abc> <-> 4a + 2b + c for qubits.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron(std::span<const ComplexMatrix> factors);
ComplexVector kron(const ComplexVector& a, const ComplexVector& b);

/// op acting on factor `site` of a product space with the given factor dimensions.
ComplexMatrix embed(const ComplexMatrix& op, std::size_t site, std::span<const std::size_t> dims);

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b);

/// Largest entry modulus; the deviation measure used by every check in the library.
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double hermiticity_deviation(const ComplexMatrix& m);
double unitarity_deviation(const ComplexMatrix& m);
double projector_deviation(const ComplexMatrix& m);

bool is_hermitian(const ComplexMatrix& m, double tol = kDefaultTolerance);
bool is_unitary(const ComplexMatrix& m, double tol = kDefaultTolerance);
bool is_projector(const ComplexMatrix& m, double tol = kDefaultTolerance);

struct EigenSystem {
  RealVector values;     ///< ascending
  ComplexMatrix vectors; ///< column j belongs to values(j)
};

/// Hermitian eigendecomposition. Throws std::domain_error for non-Hermitian input.
EigenSystem eigh(const ComplexMatrix& h, double tol = kDefaultTolerance);

/// exp(-i h t) through the spectral decomposition of h.
ComplexMatrix evolve(const ComplexMatrix& h, double t, double tol = kDefaultTolerance);

/// Reduced state on the factors listed in `keep` (ascending order is not required).
DensityOperator partial_trace(const DensityOperator& rho, std::span<const std::size_t> dims,
                              std::span<const std::size_t> keep);

PureState random_haar_state(std::size_t dim, std::uint64_t seed);
ComplexMatrix random_hermitian(std::size_t dim, std::uint64_t seed);

} // namespace qframe

#endif
