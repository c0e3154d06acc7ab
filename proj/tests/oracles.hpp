// Test-side reference computations. These deliberately avoid the library's own eigensolver,
// Kronecker bookkeeping, and SVD-based nullspaces so that agreement is meaningful.
#ifndef QFRAME_TESTS_ORACLES_HPP
#define QFRAME_TESTS_ORACLES_HPP

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace oracle {

using C = std::complex<double>;
using Mat = Eigen::MatrixXcd; // column-major on purpose, unlike the library

inline Mat from(const auto& m) { return Mat(m); }

/// exp(A) by scaling and squaring around a 30-term Taylor series.
inline Mat expm_series(const Mat& a) {
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  while (norm / std::pow(2.0, squarings) > 0.25) ++squarings;
  const Mat scaled = a / std::pow(2.0, squarings);
  Mat term = Mat::Identity(a.rows(), a.cols());
  Mat sum = term;
  for (int k = 1; k <= 30; ++k) {
    term = term * scaled / static_cast<double>(k);
    sum += term;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

/// Kronecker product by explicit index loops.
inline Mat kron_loops(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

/// Single-mode truncated annihilator on {0..cutoff}.
inline Mat single_mode_a(int cutoff) {
  Mat a = Mat::Zero(cutoff + 1, cutoff + 1);
  for (int n = 1; n <= cutoff; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

/// Operator on mode k (1-based) of num_modes modes, built by chained loop-Kronecker products.
inline Mat on_mode(const Mat& op, int k, int num_modes) {
  const Eigen::Index d = op.rows();
  Mat out = Mat::Identity(1, 1);
  for (int m = 1; m <= num_modes; ++m) out = kron_loops(out, m == k ? op : Mat::Identity(d, d));
  return out;
}

/// Dual-rail projector from the phase average (1/2pi) int exp(i phi (n_k + n_k' - 1)) dphi,
/// evaluated with an equally spaced rule that is exact for integer frequencies below `points`.
inline Mat phase_average_projector(int cutoff, int k, int kp, int num_modes) {
  const Mat a = single_mode_a(cutoff);
  const Mat n = a.adjoint() * a;
  const Mat total = on_mode(n, k, num_modes) + on_mode(n, kp, num_modes);
  const Eigen::Index dim = total.rows();
  const int points = 4 * cutoff + 4;
  Mat sum = Mat::Zero(dim, dim);
  for (int j = 0; j < points; ++j) {
    const double phi = 2.0 * std::numbers::pi * j / points;
    Mat phase = Mat::Zero(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      phase(i, i) = std::exp(C(0.0, phi * (total(i, i).real() - 1.0)));
    }
    sum += phase;
  }
  return sum / static_cast<double>(points);
}

/// Dimension of the commutant of the given generators, from a full-pivot LU rank of the
/// commutation constraints in column-major vectorization.
inline Eigen::Index commutant_dimension(const std::vector<Mat>& gens) {
  const Eigen::Index n = gens.front().rows();
  std::vector<Mat> all = gens;
  for (const auto& g : gens) all.push_back(g.adjoint());
  Mat system(static_cast<Eigen::Index>(all.size()) * n * n, n * n);
  const Mat id = Mat::Identity(n, n);
  for (std::size_t i = 0; i < all.size(); ++i) {
    // vec(G M - M G) = (1 (x) G - G^T (x) 1) vec(M) for column-major vec.
    system.middleRows(static_cast<Eigen::Index>(i) * n * n, n * n) =
        kron_loops(id, all[i]) - kron_loops(all[i].transpose(), id);
  }
  Eigen::FullPivLU<Mat> lu(system);
  lu.setThreshold(1e-10);
  return n * n - lu.rank();
}

/// Dimension of the associative algebra spanned by words of length <= depth (with identity).
inline Eigen::Index word_span_dimension(const std::vector<Mat>& gens, int depth) {
  const Eigen::Index n = gens.front().rows();
  std::vector<Mat> letters = gens;
  for (const auto& g : gens) letters.push_back(g.adjoint());
  std::vector<Mat> words{Mat::Identity(n, n)};
  std::vector<Mat> frontier = words;
  for (int d = 0; d < depth; ++d) {
    std::vector<Mat> next;
    for (const auto& w : frontier)
      for (const auto& l : letters) next.push_back(w * l);
    words.insert(words.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  Mat stacked(n * n, static_cast<Eigen::Index>(words.size()));
  for (std::size_t i = 0; i < words.size(); ++i)
    stacked.col(static_cast<Eigen::Index>(i)) = words[i].reshaped();
  Eigen::FullPivLU<Mat> lu(stacked);
  lu.setThreshold(1e-10);
  return lu.rank();
}

/// tr(M^k) for Hermitian M, summed directly.
inline double trace_power(const Mat& m, int k) {
  Mat p = Mat::Identity(m.rows(), m.cols());
  for (int i = 0; i < k; ++i) p = p * m;
  return p.trace().real();
}

} // namespace oracle

#endif
