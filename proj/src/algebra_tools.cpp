#include "qframe/algebra_tools.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>

namespace qframe {

namespace {

// Largest ambient dimension for which the n^2 x n^2 commutation system is assembled densely.
constexpr std::size_t kMaxCommutantDim = 32;
// Relative singular-value threshold separating the nullspace from the rest.
constexpr double kNullspaceThreshold = 1e-7;
// Eigenvalues of the random central element closer than this belong to one isotypic block.
constexpr double kCentralGap = 1e-6;
constexpr double kRankThreshold = 1e-9;

Eigen::Index as_index(std::size_t n) { return static_cast<Eigen::Index>(n); }

ComplexVector vec(const ComplexMatrix& m) {
  return Eigen::Map<const ComplexVector>(m.data(), m.size());
}

ComplexMatrix unvec(const ComplexVector& v, Eigen::Index n) {
  return Eigen::Map<const ComplexMatrix>(v.data(), n, n);
}

void require_same_dim(const ComplexMatrix& m, std::size_t n, const char* what) {
  if (m.rows() != m.cols() || static_cast<std::size_t>(m.rows()) != n) {
    throw DimensionError(std::string(what) + ": operator dimension does not match " +
                         std::to_string(n));
  }
}

std::vector<ComplexMatrix> with_adjoints(const std::vector<ComplexMatrix>& gens) {
  std::vector<ComplexMatrix> out;
  out.reserve(2 * gens.size());
  for (const auto& g : gens) {
    out.push_back(g);
    if (hermiticity_deviation(g) > 1e-12 * std::max(1.0, max_abs(g))) {
      out.push_back(g.adjoint());
    }
  }
  return out;
}

/// Gram-Schmidt against an orthonormal set, with one reorthogonalization pass. Returns false
/// when the candidate is already (numerically) in the span.
bool orthonormalize_into(std::vector<ComplexVector>& basis, ComplexVector candidate,
                         double scale) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& b : basis) {
      candidate -= b.dot(candidate) * b;
    }
  }
  const double norm = candidate.norm();
  if (norm <= 1e-8 * std::max(1.0, scale)) {
    return false;
  }
  basis.push_back(candidate / norm);
  return true;
}

} // namespace

OperatorAlgebra::OperatorAlgebra(std::vector<ComplexMatrix> generators)
    : ambient_dim_(0), generators_(std::move(generators)) {
  if (generators_.empty()) {
    throw std::invalid_argument("OperatorAlgebra: at least one generator is required");
  }
  ambient_dim_ = static_cast<std::size_t>(generators_.front().rows());
  for (const auto& g : generators_) {
    require_same_dim(g, ambient_dim_, "OperatorAlgebra");
  }
}

std::size_t IsotypicSummary::ambient_dim() const {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.multiplicity * b.irrep_dim;
  return n;
}

std::size_t IsotypicSummary::commutant_dim() const {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.multiplicity * b.multiplicity;
  return n;
}

bool IsotypicSummary::contains(std::size_t multiplicity, std::size_t irrep_dim) const {
  return std::find(blocks.begin(), blocks.end(), IsotypicBlock{multiplicity, irrep_dim}) !=
         blocks.end();
}

VerificationReport::VerificationReport(std::string label, double tolerance, std::uint64_t seed)
    : label_(std::move(label)), tolerance_(tolerance), seed_(seed) {
  if (!(tolerance > 0.0)) {
    throw std::invalid_argument("VerificationReport: tolerance must be positive");
  }
}

bool VerificationReport::add(std::string name, double max_deviation) {
  const bool pass = !std::isnan(max_deviation) && max_deviation <= tolerance_;
  checks_.push_back({std::move(name), max_deviation, pass});
  return pass;
}

void VerificationReport::append(const VerificationReport& other, const std::string& prefix) {
  for (const auto& c : other.checks()) {
    add(prefix + c.name, c.max_deviation);
  }
}

bool VerificationReport::all_pass() const {
  return std::all_of(checks_.begin(), checks_.end(), [](const Check& c) { return c.pass; });
}

const Check& VerificationReport::find(const std::string& name) const {
  auto it = std::find_if(checks_.begin(), checks_.end(),
                         [&](const Check& c) { return c.name == name; });
  if (it == checks_.end()) {
    throw std::out_of_range("VerificationReport: no check named " + name);
  }
  return *it;
}

nlohmann::ordered_json to_json(const Check& check) {
  nlohmann::ordered_json j;
  j["name"] = check.name;
  j["max_deviation"] = check.max_deviation;
  j["pass"] = check.pass;
  return j;
}

nlohmann::ordered_json VerificationReport::to_json() const {
  nlohmann::ordered_json j;
  j["label"] = label_;
  j["tolerance"] = tolerance_;
  j["seed"] = seed_;
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks_) {
    j["checks"].push_back(qframe::to_json(c));
  }
  return j;
}

VerificationReport verify_frame(const EncodedQubitFrame& frame, double tol) {
  const std::size_t n = frame.ambient_dim();
  require_same_dim(frame.support, n, "verify_frame");
  require_same_dim(frame.x, n, "verify_frame");
  require_same_dim(frame.y, n, "verify_frame");
  require_same_dim(frame.z, n, "verify_frame");

  const ComplexMatrix& p = frame.support;
  const std::array<const ComplexMatrix*, 3> ops{&frame.x, &frame.y, &frame.z};

  VerificationReport report(frame.label, tol);
  report.add("support_projector", projector_deviation(p));

  double herm = 0.0;
  for (const auto* o : ops) herm = std::max(herm, hermiticity_deviation(*o));
  report.add("hermitian", herm);

  // [X,Y] = 2iZ and cyclic permutations.
  double comm = 0.0;
  for (std::size_t a = 0; a < 3; ++a) {
    const auto& first = *ops[a];
    const auto& second = *ops[(a + 1) % 3];
    const auto& third = *ops[(a + 2) % 3];
    comm = std::max(comm, max_abs(commutator(first, second) - 2.0 * kI * third));
  }
  report.add("commutation", comm);

  // {A,B} = 2 delta_AB P; the diagonal case is reported separately as A^2 = P.
  double anti = 0.0;
  double square = 0.0;
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t b = a; b < 3; ++b) {
      const ComplexMatrix ac = anticommutator(*ops[a], *ops[b]);
      if (a == b) {
        anti = std::max(anti, max_abs(ac - 2.0 * p));
        square = std::max(square, max_abs(*ops[a] * *ops[a] - p));
      } else {
        anti = std::max(anti, max_abs(ac));
      }
    }
  }
  report.add("anticommutation", anti);
  report.add("square_is_support", square);

  double contain = 0.0;
  for (const auto* o : ops) {
    contain = std::max({contain, max_abs(p * *o - *o), max_abs(*o * p - *o)});
  }
  report.add("support_containment", contain);

  const Complex trace = p.trace();
  const double nearest_even = 2.0 * std::round(trace.real() / 2.0);
  report.add("support_trace_even",
             std::max({std::abs(trace.real() - nearest_even), std::abs(trace.imag()),
                       2.0 - trace.real()}));
  return report;
}

std::vector<ComplexMatrix> commutant_basis(const OperatorAlgebra& alg) {
  const std::size_t n = alg.ambient_dim();
  if (n > kMaxCommutantDim) {
    throw std::length_error("commutant_basis: dense commutation system limited to dimension " +
                            std::to_string(kMaxCommutantDim));
  }
  const Eigen::Index nn = as_index(n * n);
  const ComplexMatrix id = identity(n);

  // With row-major vectorization, vec(M G) = (I (x) G^T) vec(M) and vec(G M) = (G (x) I) vec(M).
  Eigen::MatrixXcd gram = Eigen::MatrixXcd::Zero(nn, nn);
  double scale = 0.0;
  for (const auto& g : with_adjoints(alg.generators())) {
    const ComplexMatrix c = kron(id, g.transpose()) - kron(g, id);
    gram.noalias() += c.adjoint() * c;
    scale = std::max(scale, max_abs(g));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gram);
  const double cutoff = std::pow(kNullspaceThreshold * std::max(1.0, scale), 2);

  std::vector<ComplexMatrix> basis;
  for (Eigen::Index j = 0; j < nn; ++j) {
    if (solver.eigenvalues()(j) <= cutoff) {
      basis.push_back(unvec(solver.eigenvectors().col(j), as_index(n)));
    }
  }
  return basis;
}

std::vector<ComplexMatrix> generated_algebra_basis(const OperatorAlgebra& alg,
                                                   std::size_t max_word_length) {
  const std::size_t n = alg.ambient_dim();
  const auto gens = with_adjoints(alg.generators());

  std::vector<ComplexVector> basis;
  orthonormalize_into(basis, vec(identity(n)), 1.0);
  std::vector<ComplexMatrix> frontier{identity(n) / std::sqrt(static_cast<double>(n))};

  for (std::size_t len = 1; len <= max_word_length && !frontier.empty(); ++len) {
    std::vector<ComplexMatrix> next;
    for (const auto& f : frontier) {
      for (const auto& g : gens) {
        const ComplexMatrix word = f * g;
        if (orthonormalize_into(basis, vec(word), 1.0)) {
          next.push_back(unvec(basis.back(), as_index(n)));
        }
      }
    }
    frontier = std::move(next);
  }

  std::vector<ComplexMatrix> out;
  out.reserve(basis.size());
  for (const auto& b : basis) out.push_back(unvec(b, as_index(n)));
  return out;
}

std::size_t span_dimension(const std::vector<ComplexMatrix>& ops) {
  if (ops.empty()) return 0;
  const Eigen::Index len = ops.front().size();
  Eigen::MatrixXcd stacked(len, as_index(ops.size()));
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (ops[i].size() != len) {
      throw DimensionError("span_dimension: operators of different sizes");
    }
    stacked.col(as_index(i)) = vec(ops[i]);
  }
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(stacked);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > kRankThreshold * std::max(1.0, sv(0))) ++rank;
  }
  return rank;
}

IsotypicSummary isotypic_decomposition(const OperatorAlgebra& alg, std::uint64_t seed) {
  const std::size_t n = alg.ambient_dim();
  const std::vector<ComplexMatrix> commutant = commutant_basis(alg);

  // The center of the generated algebra is the commutant of (generators + commutant).
  std::vector<ComplexMatrix> joint = alg.generators();
  joint.insert(joint.end(), commutant.begin(), commutant.end());
  const std::vector<ComplexMatrix> center = commutant_basis(OperatorAlgebra(joint));

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  ComplexMatrix central = ComplexMatrix::Zero(as_index(n), as_index(n));
  for (const auto& z : center) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    central += re * 0.5 * (z + z.adjoint()) + im * (-0.5 * kI) * (z - z.adjoint());
  }
  const EigenSystem es = eigh(central);

  IsotypicSummary summary;
  Eigen::Index start = 0;
  while (start < es.values.size()) {
    Eigen::Index stop = start + 1;
    while (stop < es.values.size() && es.values(stop) - es.values(stop - 1) <= kCentralGap) {
      ++stop;
    }
    const ComplexMatrix v = es.vectors.middleCols(start, stop - start);
    const auto block_dim = static_cast<std::size_t>(stop - start);

    std::vector<ComplexMatrix> center_part;
    for (const auto& z : center) center_part.push_back(v.adjoint() * z * v);
    if (span_dimension(center_part) != 1) {
      throw IsotypicSplitError("isotypic_decomposition: central element did not separate blocks "
                               "(seed " + std::to_string(seed) + ")");
    }

    std::vector<ComplexMatrix> commutant_part;
    for (const auto& m : commutant) commutant_part.push_back(v.adjoint() * m * v);
    const std::size_t r = span_dimension(commutant_part);
    const auto m = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(r))));
    if (m == 0 || m * m != r || block_dim % m != 0) {
      throw IsotypicSplitError("isotypic_decomposition: block of dimension " +
                               std::to_string(block_dim) + " has restricted commutant of "
                               "dimension " + std::to_string(r));
    }
    summary.blocks.push_back({m, block_dim / m});
    start = stop;
  }

  if (summary.commutant_dim() != commutant.size() || summary.ambient_dim() != n) {
    throw IsotypicSplitError("isotypic_decomposition: block structure inconsistent with the "
                             "commutant dimension");
  }
  std::sort(summary.blocks.begin(), summary.blocks.end());
  return summary;
}

VerificationReport frame_commutes_with(const EncodedQubitFrame& frame, const OperatorAlgebra& alg,
                                       double tol) {
  const std::size_t n = frame.ambient_dim();
  if (alg.ambient_dim() != n) {
    throw DimensionError("frame_commutes_with: frame and algebra live on different spaces");
  }
  VerificationReport report(frame.label, tol);
  const std::array<std::pair<const char*, const ComplexMatrix*>, 3> ops{
      {{"commutes_x", &frame.x}, {"commutes_y", &frame.y}, {"commutes_z", &frame.z}}};
  for (const auto& [name, op] : ops) {
    require_same_dim(*op, n, "frame_commutes_with");
    double dev = 0.0;
    for (const auto& g : alg.generators()) {
      dev = std::max(dev, max_abs(commutator(*op, g)));
    }
    report.add(name, dev);
  }
  return report;
}

double expectation(const ComplexMatrix& op, const PureState& state, double tol) {
  require_same_dim(op, state.dim(), "expectation");
  if (hermiticity_deviation(op) > tol * std::max(1.0, max_abs(op))) {
    throw std::domain_error("expectation: observable is not Hermitian");
  }
  const Complex value = state.amplitudes().dot(op * state.amplitudes());
  if (std::abs(value.imag()) > tol) {
    throw std::domain_error("expectation: imaginary residue exceeds tolerance");
  }
  return value.real();
}

double expectation(const ComplexMatrix& op, const DensityOperator& rho, double tol) {
  require_same_dim(op, rho.dim(), "expectation");
  if (hermiticity_deviation(op) > tol * std::max(1.0, max_abs(op))) {
    throw std::domain_error("expectation: observable is not Hermitian");
  }
  const Complex value = (rho.matrix() * op).trace();
  if (std::abs(value.imag()) > tol) {
    throw std::domain_error("expectation: imaginary residue exceeds tolerance");
  }
  return value.real();
}

EncodedQubitFrame pauli_frame() {
  return {"pauli", identity(2), pauli_x(), pauli_y(), pauli_z()};
}

nlohmann::ordered_json to_json(const IsotypicSummary& summary) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const auto& b : summary.blocks) {
    j.push_back({{"multiplicity", b.multiplicity}, {"irrep_dim", b.irrep_dim}});
  }
  return j;
}

} // namespace qframe
