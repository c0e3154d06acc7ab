#include "qframe/tensor_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

namespace qframe {

namespace {

Eigen::Index as_index(std::size_t n) { return static_cast<Eigen::Index>(n); }

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw DimensionError(std::string(what) + ": operator is not square");
  }
}

void require_same_square(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
  require_square(a, what);
  require_square(b, what);
  if (a.rows() != b.rows()) {
    throw DimensionError(std::string(what) + ": dimension mismatch (" + std::to_string(a.rows()) +
                         " vs " + std::to_string(b.rows()) + ")");
  }
}

double scaled_tolerance(const ComplexMatrix& m, double tol) {
  return tol * std::max(1.0, max_abs(m));
}

} // namespace

PureState::PureState(ComplexVector amplitudes, double tol) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() == 0) {
    throw std::invalid_argument("PureState: empty amplitude vector");
  }
  const double norm = amplitudes_.norm();
  if (std::abs(norm - 1.0) > tol) {
    throw std::invalid_argument("PureState: norm " + std::to_string(norm) + " is not 1");
  }
}

PureState PureState::normalized(ComplexVector amplitudes) {
  const double norm = amplitudes.norm();
  if (norm == 0.0) {
    throw std::invalid_argument("PureState::normalized: zero vector");
  }
  amplitudes /= norm;
  return PureState(std::move(amplitudes));
}

DensityOperator::DensityOperator(ComplexMatrix matrix, double tol) : matrix_(std::move(matrix)) {
  require_square(matrix_, "DensityOperator");
  if (matrix_.rows() == 0) {
    throw std::invalid_argument("DensityOperator: empty matrix");
  }
  if (hermiticity_deviation(matrix_) > tol) {
    throw std::invalid_argument("DensityOperator: matrix is not Hermitian");
  }
  const double trace = matrix_.trace().real();
  if (std::abs(trace - 1.0) > tol) {
    throw std::invalid_argument("DensityOperator: trace " + std::to_string(trace) + " is not 1");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(matrix_, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -tol) {
    throw std::invalid_argument("DensityOperator: matrix is not positive semidefinite");
  }
}

DensityOperator DensityOperator::from_pure(const PureState& state) {
  const ComplexVector& v = state.amplitudes();
  return DensityOperator(v * v.adjoint());
}

double DensityOperator::purity() const { return (matrix_ * matrix_).trace().real(); }

ComplexMatrix identity(std::size_t n) { return ComplexMatrix::Identity(as_index(n), as_index(n)); }

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << 0.0, -kI, kI, 0.0;
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

ComplexVector basis_vector(std::size_t dim, std::size_t index) {
  if (index >= dim) {
    throw DimensionError("basis_vector: index out of range");
  }
  ComplexVector v = ComplexVector::Zero(as_index(dim));
  v(as_index(index)) = 1.0;
  return v;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix kron(std::span<const ComplexMatrix> factors) {
  if (factors.empty()) {
    return identity(1);
  }
  ComplexMatrix out = factors.front();
  for (const auto& f : factors.subspan(1)) {
    out = kron(out, f);
  }
  return out;
}

ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

ComplexMatrix embed(const ComplexMatrix& op, std::size_t site, std::span<const std::size_t> dims) {
  if (site >= dims.size()) {
    throw DimensionError("embed: site out of range");
  }
  require_square(op, "embed");
  if (static_cast<std::size_t>(op.rows()) != dims[site]) {
    throw DimensionError("embed: operator does not match the factor dimension");
  }
  std::size_t before = 1;
  std::size_t after = 1;
  for (std::size_t i = 0; i < site; ++i) before *= dims[i];
  for (std::size_t i = site + 1; i < dims.size(); ++i) after *= dims[i];
  return kron(kron(identity(before), op), identity(after));
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_square(a, b, "commutator");
  return a * b - b * a;
}

ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_square(a, b, "anticommutator");
  return a * b + b * a;
}

double hermiticity_deviation(const ComplexMatrix& m) {
  require_square(m, "hermiticity_deviation");
  return max_abs(m - m.adjoint());
}

double unitarity_deviation(const ComplexMatrix& m) {
  require_square(m, "unitarity_deviation");
  return max_abs(m.adjoint() * m - identity(static_cast<std::size_t>(m.rows())));
}

double projector_deviation(const ComplexMatrix& m) {
  return std::max(hermiticity_deviation(m), max_abs(m * m - m));
}

bool is_hermitian(const ComplexMatrix& m, double tol) { return hermiticity_deviation(m) <= tol; }
bool is_unitary(const ComplexMatrix& m, double tol) { return unitarity_deviation(m) <= tol; }
bool is_projector(const ComplexMatrix& m, double tol) { return projector_deviation(m) <= tol; }

EigenSystem eigh(const ComplexMatrix& h, double tol) {
  require_square(h, "eigh");
  if (hermiticity_deviation(h) > scaled_tolerance(h, tol)) {
    throw std::domain_error("eigh: operator is not Hermitian");
  }
  // Symmetrize so round-off in the input cannot leak into the solver.
  const Eigen::MatrixXcd sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigh: eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix evolve(const ComplexMatrix& h, double t, double tol) {
  const EigenSystem es = eigh(h, tol);
  ComplexVector phases(es.values.size());
  for (Eigen::Index j = 0; j < es.values.size(); ++j) {
    phases(j) = std::exp(-kI * es.values(j) * t);
  }
  return es.vectors * phases.asDiagonal() * es.vectors.adjoint();
}

DensityOperator partial_trace(const DensityOperator& rho, std::span<const std::size_t> dims,
                              std::span<const std::size_t> keep) {
  const std::size_t total =
      std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
  if (dims.empty() || total != rho.dim()) {
    throw DimensionError("partial_trace: factor dimensions do not multiply to the state dimension");
  }
  std::vector<bool> kept(dims.size(), false);
  for (std::size_t k : keep) {
    if (k >= dims.size() || kept[k]) {
      throw DimensionError("partial_trace: invalid or repeated factor index in keep set");
    }
    kept[k] = true;
  }

  // Split every full index into (kept multi-index, traced multi-index), both flattened with
  // factor 0 most significant.
  std::size_t kept_dim = 1;
  std::size_t traced_dim = 1;
  for (std::size_t f = 0; f < dims.size(); ++f) {
    (kept[f] ? kept_dim : traced_dim) *= dims[f];
  }
  std::vector<std::size_t> kept_of(total);
  std::vector<std::size_t> traced_of(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rem = idx;
    std::size_t kept_idx = 0;
    std::size_t traced_idx = 0;
    std::size_t kept_stride = 1;
    std::size_t traced_stride = 1;
    for (std::size_t f = dims.size(); f-- > 0;) {
      const std::size_t digit = rem % dims[f];
      rem /= dims[f];
      if (kept[f]) {
        kept_idx += digit * kept_stride;
        kept_stride *= dims[f];
      } else {
        traced_idx += digit * traced_stride;
        traced_stride *= dims[f];
      }
    }
    kept_of[idx] = kept_idx;
    traced_of[idx] = traced_idx;
  }

  std::vector<std::vector<std::size_t>> by_traced(traced_dim);
  for (std::size_t idx = 0; idx < total; ++idx) {
    by_traced[traced_of[idx]].push_back(idx);
  }

  ComplexMatrix out = ComplexMatrix::Zero(as_index(kept_dim), as_index(kept_dim));
  const ComplexMatrix& m = rho.matrix();
  for (const auto& group : by_traced) {
    for (std::size_t i : group) {
      for (std::size_t j : group) {
        out(as_index(kept_of[i]), as_index(kept_of[j])) += m(as_index(i), as_index(j));
      }
    }
  }
  return DensityOperator(std::move(out));
}

PureState random_haar_state(std::size_t dim, std::uint64_t seed) {
  if (dim == 0) {
    throw std::invalid_argument("random_haar_state: dim must be at least 1");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  ComplexVector v(as_index(dim));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    v(i) = Complex(re, im);
  }
  return PureState::normalized(std::move(v));
}

ComplexMatrix random_hermitian(std::size_t dim, std::uint64_t seed) {
  if (dim == 0) {
    throw std::invalid_argument("random_hermitian: dim must be at least 1");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  ComplexMatrix a(as_index(dim), as_index(dim));
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      a(i, j) = Complex(re, im);
    }
  }
  return 0.5 * (a + a.adjoint());
}

} // namespace qframe
