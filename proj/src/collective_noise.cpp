#include "qframe/collective_noise.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

namespace qframe::collective {

namespace {

constexpr std::size_t kSpins = 3;
constexpr std::size_t kDim = 8;
constexpr double kKernelThreshold = 1e-8;

Eigen::Index as_index(std::size_t n) { return static_cast<Eigen::Index>(n); }

ComplexMatrix on_spin(const ComplexMatrix& op, std::size_t spin, std::size_t n_spins) {
  const std::vector<std::size_t> dims(n_spins, 2);
  return embed(op, spin, dims);
}

ComplexVector ket(std::size_t bits) { return basis_vector(kDim, bits); }

std::array<ComplexMatrix, 3> paulis() { return {pauli_x(), pauli_y(), pauli_z()}; }

ComplexMatrix dot_product(std::size_t i, std::size_t j) {
  ComplexMatrix out = ComplexMatrix::Zero(as_index(kDim), as_index(kDim));
  for (const auto& p : paulis()) {
    out += on_spin(p, i, kSpins) * on_spin(p, j, kSpins);
  }
  return out;
}

/// Projector onto the span of the given columns.
ComplexMatrix span_projector(const ComplexMatrix& columns) { return columns * columns.adjoint(); }

/// 2 x 2 operator A with (A (x) 1_2) closest to the 4 x 4 input, and the residual.
std::pair<ComplexMatrix, double> qubit_factor(const ComplexMatrix& four) {
  ComplexMatrix a(2, 2);
  for (Eigen::Index i = 0; i < 2; ++i) {
    for (Eigen::Index j = 0; j < 2; ++j) {
      a(i, j) = 0.5 * (four(2 * i, 2 * j) + four(2 * i + 1, 2 * j + 1));
    }
  }
  return {a, max_abs(four - kron(a, identity(2)))};
}

double frame_expectation_shift(const EncodedQubitFrame& frame, const ComplexMatrix& u,
                               const PureState& state) {
  const PureState moved = PureState::normalized(u * state.amplitudes());
  double dev = 0.0;
  for (const ComplexMatrix* o : {&frame.x, &frame.y, &frame.z}) {
    dev = std::max(dev, std::abs(expectation(*o, moved) - expectation(*o, state)));
  }
  return dev;
}

} // namespace

CollectiveSpinSystem total_spin_ops(std::size_t n_spins) {
  if (n_spins == 0) {
    throw std::invalid_argument("total_spin_ops: need at least one spin");
  }
  const std::size_t dim = std::size_t{1} << n_spins;
  CollectiveSpinSystem sys{n_spins, ComplexMatrix::Zero(as_index(dim), as_index(dim)),
                           ComplexMatrix::Zero(as_index(dim), as_index(dim)),
                           ComplexMatrix::Zero(as_index(dim), as_index(dim)), ComplexMatrix()};
  for (std::size_t i = 0; i < n_spins; ++i) {
    sys.sx += 0.5 * on_spin(pauli_x(), i, n_spins);
    sys.sy += 0.5 * on_spin(pauli_y(), i, n_spins);
    sys.sz += 0.5 * on_spin(pauli_z(), i, n_spins);
  }
  sys.s2 = sys.sx * sys.sx + sys.sy * sys.sy + sys.sz * sys.sz;
  return sys;
}

JointKernel joint_kernel(std::size_t n_spins) {
  const CollectiveSpinSystem sys = total_spin_ops(n_spins);
  const Eigen::Index dim = sys.sx.rows();
  Eigen::MatrixXcd stacked(3 * dim, dim);
  stacked << sys.sx, sys.sy, sys.sz;
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(stacked);
  const RealVector& sv = svd.singularValues();

  JointKernel out{0, 0.0, std::numeric_limits<double>::infinity(), kKernelThreshold};
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) < kKernelThreshold) {
      ++out.dimension;
      out.largest_null_value = std::max(out.largest_null_value, sv(i));
    } else {
      out.smallest_nonzero_value = std::min(out.smallest_nonzero_value, sv(i));
    }
  }
  return out;
}

VerificationReport no_invariant_state_check(double tol) {
  VerificationReport report("collective_invariant_states", tol);
  const std::array<std::pair<std::size_t, std::size_t>, 3> expected{{{3, 0}, {2, 1}, {4, 2}}};
  for (const auto& [spins, dim] : expected) {
    const JointKernel k = joint_kernel(spins);
    const std::string tag = std::to_string(spins) + "_spins";
    report.add("invariant_states_" + tag,
               std::abs(static_cast<double>(k.dimension) - static_cast<double>(dim)));
    // Nonzero singular values must sit at least 1e-4 above zero.
    report.add("kernel_separation_" + tag, std::max(0.0, 1e-4 - k.smallest_nonzero_value));
  }
  return report;
}

BasisFlavor flavor_from_string(const std::string& name) {
  if (name == "singlet_triplet") return BasisFlavor::singlet_triplet;
  if (name == "omega") return BasisFlavor::omega;
  throw std::invalid_argument("unknown basis flavor: " + name);
}

std::string to_string(BasisFlavor flavor) {
  return flavor == BasisFlavor::omega ? "omega" : "singlet_triplet";
}

ComplexVector ProtectedBasis::vector(int lambda, int sz_index) const {
  if ((lambda != 0 && lambda != 1) || (sz_index != 0 && sz_index != 1)) {
    throw std::out_of_range("ProtectedBasis::vector: labels must be 0 or 1");
  }
  return columns.col(2 * lambda + sz_index);
}

nlohmann::ordered_json ProtectedBasis::to_json() const {
  nlohmann::ordered_json j;
  j["flavor"] = to_string(flavor);
  j["vectors"] = nlohmann::ordered_json::array();
  for (int lambda : {0, 1}) {
    for (int s : {0, 1}) {
      nlohmann::ordered_json amps = nlohmann::ordered_json::array();
      const ComplexVector v = vector(lambda, s);
      for (Eigen::Index i = 0; i < v.size(); ++i) {
        amps.push_back({v(i).real(), v(i).imag()});
      }
      j["vectors"].push_back({{"lambda", lambda}, {"sz", s == 0 ? "+1/2" : "-1/2"},
                              {"amplitudes", amps}});
    }
  }
  return j;
}

ProtectedBasis protected_basis(BasisFlavor flavor) {
  ProtectedBasis basis{flavor, ComplexMatrix(as_index(kDim), 4)};
  if (flavor == BasisFlavor::singlet_triplet) {
    const double r2 = std::sqrt(2.0);
    const double r6 = std::sqrt(6.0);
    basis.columns.col(0) = (ket(0b010) - ket(0b100)) / r2;
    basis.columns.col(1) = (ket(0b101) - ket(0b011)) / r2;
    basis.columns.col(2) = (2.0 * ket(0b001) - ket(0b010) - ket(0b100)) / r6;
    basis.columns.col(3) = (2.0 * ket(0b110) - ket(0b101) - ket(0b011)) / r6;
  } else {
    const Complex w = std::exp(2.0 * std::numbers::pi / 3.0 * kI);
    const Complex w2 = w * w;
    const double r3 = std::sqrt(3.0);
    basis.columns.col(0) = (ket(0b001) + w * ket(0b010) + w2 * ket(0b100)) / r3;
    basis.columns.col(1) = (ket(0b110) + w * ket(0b101) + w2 * ket(0b011)) / r3;
    basis.columns.col(2) = (ket(0b001) + w2 * ket(0b010) + w * ket(0b100)) / r3;
    basis.columns.col(3) = (ket(0b110) + w2 * ket(0b101) + w * ket(0b011)) / r3;
  }
  return basis;
}

Scalars scalars() { return {dot_product(0, 1), dot_product(1, 2), dot_product(2, 0)}; }

ComplexMatrix swap12() { return 0.5 * (identity(kDim) + dot_product(0, 1)); }

ComplexMatrix tau123() {
  const auto p = paulis();
  ComplexMatrix out = ComplexMatrix::Zero(as_index(kDim), as_index(kDim));
  // Even permutations of (x, y, z) carry +1, odd ones -1.
  const std::array<std::array<std::size_t, 3>, 3> even{{{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}};
  for (const auto& [a, b, c] : even) {
    out += kron(kron(p[a], p[b]), p[c]);
    out -= kron(kron(p[a], p[c]), p[b]);
  }
  return out;
}

ComplexMatrix protected_projector() {
  const Scalars s = scalars();
  return 0.5 * identity(kDim) - (s.s12 + s.s23 + s.s31) / 6.0;
}

EncodedQubitFrame noiseless_frame(BasisFlavor flavor) {
  const Scalars s = scalars();
  const ComplexMatrix p = protected_projector();
  const double r3 = std::sqrt(3.0);

  EncodedQubitFrame frame;
  frame.label = "collective_" + to_string(flavor);
  frame.support = p;
  if (flavor == BasisFlavor::omega) {
    frame.x = (2.0 * s.s12 - s.s23 - s.s31) * p / 6.0;
    frame.y = -r3 * (s.s23 - s.s31) * p / 6.0;
    frame.z = commutator(frame.x, frame.y) / (2.0 * kI);
  } else {
    frame.x = r3 * (s.s23 - s.s31) * p / 6.0;
    frame.z = -swap12() * p;
    frame.y = commutator(frame.z, frame.x) / (2.0 * kI);
  }
  return frame;
}

BlockForm collective_block_form(const ProtectedBasis& basis) {
  const CollectiveSpinSystem sys = total_spin_ops(kSpins);
  BlockForm out{};
  out.block_deviation = 0.0;
  const auto gens = sys.generators();
  for (std::size_t a = 0; a < 3; ++a) {
    const ComplexMatrix coords = basis.columns.adjoint() * *gens[a] * basis.columns;
    // Q is the first factor, so 1 (x) sigma is block diagonal with equal 2 x 2 blocks.
    const ComplexMatrix sigma = 0.5 * (coords.topLeftCorner(2, 2) + coords.bottomRightCorner(2, 2));
    out.sigma[a] = sigma;
    out.block_deviation =
        std::max(out.block_deviation, max_abs(coords - kron(identity(2), sigma)));
  }
  return out;
}

VerificationReport noiseless_invariance_suite(std::size_t trials, std::uint64_t seed, double tol) {
  VerificationReport report("collective_invariance", tol, seed);
  const CollectiveSpinSystem sys = total_spin_ops(kSpins);

  for (BasisFlavor flavor : {BasisFlavor::omega, BasisFlavor::singlet_triplet}) {
    const std::string tag = to_string(flavor);
    const EncodedQubitFrame frame = noiseless_frame(flavor);
    report.append(frame_commutes_with(frame, sys.algebra(), tol), tag + ".frame_");

    const BlockForm block = collective_block_form(protected_basis(flavor));
    report.add(tag + ".block_form_identity_on_q", block.block_deviation);
    double unit = 0.0;
    for (const auto& sigma : block.sigma) {
      // sigma(alpha) / (1/2) must be a unit combination of Pauli operators.
      const ComplexMatrix pauli_like = 2.0 * sigma;
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(pauli_like);
      unit = std::max({unit, std::abs(svd.singularValues()(0) - 1.0),
                       hermiticity_deviation(pauli_like), std::abs(pauli_like.trace()),
                       max_abs(pauli_like * pauli_like - identity(2))});
    }
    report.add(tag + ".block_sigma_unit_pauli", unit);
  }

  if (trials == 0) {
    return report;
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  const EncodedQubitFrame omega = noiseless_frame(BasisFlavor::omega);
  const EncodedQubitFrame st = noiseless_frame(BasisFlavor::singlet_triplet);
  double shift = 0.0;
  double protected_state = 0.0;
  {
    const PureState s = random_haar_state(kDim, rng());
    shift = frame_expectation_shift(omega, evolve(sys.sz, 1.7), s);
  }
  for (std::size_t trial = 0; trial < trials; ++trial) {
    const double tx = gauss(rng);
    const double ty = gauss(rng);
    const double tz = gauss(rng);
    const ComplexMatrix u = evolve(tx * sys.sx + ty * sys.sy + tz * sys.sz, 1.0);
    const PureState s = random_haar_state(kDim, rng());
    shift = std::max({shift, frame_expectation_shift(omega, u, s),
                      frame_expectation_shift(st, u, s)});

    // A protected qubit stays pure and unchanged whatever the gauge factor does.
    const PureState psi = random_haar_state(2, rng());
    const PureState gauge = random_haar_state(2, rng());
    const DensityOperator mixed_gauge(0.5 * DensityOperator::from_pure(gauge).matrix() +
                                      0.25 * identity(2));
    const DensityOperator rho = embed_protected(psi.amplitudes(), mixed_gauge);
    const DensityOperator moved(u * rho.matrix() * u.adjoint());
    const DensityOperator q_after = reduce_protected(moved, 0);
    protected_state = std::max(
        {protected_state, std::abs(q_after.purity() - 1.0),
         max_abs(q_after.matrix() - DensityOperator::from_pure(psi).matrix())});
  }
  report.add("random_collective_rotation_invariance", shift);
  report.add("random_collective_rotation_keeps_qubit_state", protected_state);
  return report;
}

DensityOperator embed_protected(const ComplexVector& psi_q, const DensityOperator& rho_gauge,
                                BasisFlavor flavor) {
  if (psi_q.size() != 2 || rho_gauge.dim() != 2) {
    throw DimensionError("embed_protected: expects a qubit state and a 2 x 2 gauge state");
  }
  const PureState psi(psi_q);
  const ComplexMatrix local = kron(DensityOperator::from_pure(psi).matrix(), rho_gauge.matrix());
  const ComplexMatrix b = protected_basis(flavor).columns;
  return DensityOperator(b * local * b.adjoint());
}

DensityOperator reduce_protected(const DensityOperator& rho, std::size_t keep,
                                 BasisFlavor flavor) {
  if (rho.dim() != kDim) {
    throw DimensionError("reduce_protected: expects a three-spin density operator");
  }
  if (keep > 1) {
    throw std::out_of_range("reduce_protected: keep must be 0 (qubit) or 1 (gauge)");
  }
  const ComplexMatrix b = protected_basis(flavor).columns;
  const DensityOperator local(b.adjoint() * rho.matrix() * b);
  const std::array<std::size_t, 2> dims{2, 2};
  const std::array<std::size_t, 1> kept{keep};
  return partial_trace(local, dims, kept);
}

double purity_of_protected_qubit(const ComplexVector& psi_q, const DensityOperator& rho_gauge,
                                 BasisFlavor flavor) {
  return reduce_protected(embed_protected(psi_q, rho_gauge, flavor), 0, flavor).purity();
}

double purity_of_gauge(const ComplexVector& psi_q, const DensityOperator& rho_gauge,
                       BasisFlavor flavor) {
  return reduce_protected(embed_protected(psi_q, rho_gauge, flavor), 1, flavor).purity();
}

std::pair<EncodedQubitFrame, EncodedQubitFrame> exchange_sector_frames(BasisFlavor flavor) {
  const EncodedQubitFrame full = noiseless_frame(flavor);
  const ProtectedBasis basis = protected_basis(flavor);
  auto restrict_to = [&](int sz_index, const std::string& tag) {
    ComplexMatrix cols(as_index(kDim), 2);
    cols.col(0) = basis.vector(0, sz_index);
    cols.col(1) = basis.vector(1, sz_index);
    const ComplexMatrix p = span_projector(cols);
    return EncodedQubitFrame{full.label + "_" + tag, p, p * full.x * p, p * full.y * p,
                             p * full.z * p};
  };
  return {restrict_to(0, "sz_plus"), restrict_to(1, "sz_minus")};
}

BasisChange basis_change_between_flavors() {
  const ComplexMatrix b = protected_basis(BasisFlavor::omega).columns;
  const EncodedQubitFrame omega = noiseless_frame(BasisFlavor::omega);
  const EncodedQubitFrame st = noiseless_frame(BasisFlavor::singlet_triplet);

  // Both frames in omega coordinates are (2 x 2) (x) 1; find W with W A_omega W^dag = A_st.
  const std::array<std::pair<const ComplexMatrix*, const ComplexMatrix*>, 3> pairs{
      {{&omega.x, &st.x}, {&omega.y, &st.y}, {&omega.z, &st.z}}};
  Eigen::MatrixXcd system(12, 4);
  const ComplexMatrix id2 = identity(2);
  for (std::size_t k = 0; k < 3; ++k) {
    const ComplexMatrix a = qubit_factor(b.adjoint() * *pairs[k].first * b).first;
    const ComplexMatrix c = qubit_factor(b.adjoint() * *pairs[k].second * b).first;
    // Row-major vec: vec(W A) = (1 (x) A^T) vec(W), vec(C W) = (C (x) 1) vec(W).
    system.middleRows(as_index(4 * k), 4) = kron(id2, a.transpose()) - kron(c, id2);
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(system, Eigen::ComputeFullV);
  const ComplexVector w_vec = svd.matrixV().col(3);
  ComplexMatrix w = Eigen::Map<const ComplexMatrix>(w_vec.data(), 2, 2);
  w *= std::sqrt(2.0) / w.norm();

  BasisChange out;
  out.qubit_unitary = w;
  out.ambient_unitary = b * kron(w, id2) * b.adjoint() + (identity(kDim) - b * b.adjoint());
  const ComplexMatrix& v = out.ambient_unitary;
  out.residual = std::max({max_abs(v * omega.x * v.adjoint() - st.x),
                           max_abs(v * omega.y * v.adjoint() - st.y),
                           max_abs(v * omega.z * v.adjoint() - st.z), unitarity_deviation(v)});
  return out;
}

PureState prepare_initial_state() {
  return PureState(protected_basis(BasisFlavor::singlet_triplet).vector(0, 0));
}

std::pair<ComplexMatrix, ComplexMatrix> singlet_triplet_readout() {
  const ComplexMatrix e = swap12();
  return {0.5 * (identity(kDim) - e), 0.5 * (identity(kDim) + e)};
}

VerificationReport suite(std::size_t trials, std::uint64_t seed, double tol) {
  VerificationReport report("collective", tol, seed);
  const CollectiveSpinSystem sys = total_spin_ops(kSpins);

  report.add("spin_algebra",
             std::max({max_abs(commutator(sys.sx, sys.sy) - kI * sys.sz),
                       max_abs(commutator(sys.sy, sys.sz) - kI * sys.sx),
                       max_abs(commutator(sys.sz, sys.sx) - kI * sys.sy)}));
  {
    const EigenSystem es = eigh(sys.s2);
    double dev = 0.0;
    for (Eigen::Index i = 0; i < es.values.size(); ++i) {
      dev = std::max(dev, std::abs(es.values(i) - (i < 4 ? 0.75 : 3.75)));
    }
    report.add("casimir_spectrum_3_4_and_15_4", dev);
  }
  report.append(no_invariant_state_check(tol));

  const ComplexMatrix pq = protected_projector();
  for (BasisFlavor flavor : {BasisFlavor::omega, BasisFlavor::singlet_triplet}) {
    const std::string tag = to_string(flavor);
    const ProtectedBasis basis = protected_basis(flavor);
    const ComplexMatrix& b = basis.columns;
    double labels = 0.0;
    for (int lambda : {0, 1}) {
      for (int s : {0, 1}) {
        const ComplexVector v = basis.vector(lambda, s);
        const double sz = s == 0 ? 0.5 : -0.5;
        labels = std::max({labels, max_abs(ComplexVector(sys.s2 * v - 0.75 * v)),
                           max_abs(ComplexVector(sys.sz * v - sz * v))});
      }
    }
    report.add(tag + ".basis_orthonormal", max_abs(b.adjoint() * b - identity(4)));
    report.add(tag + ".basis_labels", labels);
    report.add(tag + ".basis_spans_protected_subspace", max_abs(span_projector(b) - pq));

    const EncodedQubitFrame frame = noiseless_frame(flavor);
    report.append(verify_frame(frame, tol), tag + ".frame.");

    // Products of the observables close on a 4-dim algebra over the support.
    std::vector<ComplexMatrix> compressed;
    for (const auto& m : generated_algebra_basis(OperatorAlgebra({frame.x, frame.y, frame.z}))) {
      compressed.push_back(frame.support * m * frame.support);
    }
    report.add(tag + ".frame_algebra_dim_4", std::abs(static_cast<double>(span_dimension(compressed)) - 4.0));
  }

  {
    const Scalars s = scalars();
    double dev = 0.0;
    for (const ComplexMatrix* sc : {&s.s12, &s.s23, &s.s31}) {
      for (const ComplexMatrix* g : sys.generators()) dev = std::max(dev, max_abs(commutator(*sc, *g)));
    }
    report.add("scalars_commute_with_collective_spin", dev);
    report.add("protected_projector_trace_4", std::abs(pq.trace() - 4.0));
    report.add("protected_projector_is_projector", projector_deviation(pq));
  }
  {
    const EncodedQubitFrame omega = noiseless_frame(BasisFlavor::omega);
    report.add("omega.z_is_scaled_tau", max_abs(omega.z - std::sqrt(3.0) / 6.0 * tau123()));
    report.add("omega.x_is_swap_on_support", max_abs(omega.x - swap12() * pq));
    const ProtectedBasis basis = protected_basis(BasisFlavor::omega);
    report.add("omega.x_maps_0_to_1",
               max_abs(ComplexVector(omega.x * basis.vector(0, 0) - basis.vector(1, 0))));
  }
  report.add("flavors_related_by_qubit_unitary", basis_change_between_flavors().residual);

  {
    const OperatorAlgebra alg = sys.algebra();
    report.add("commutant_dim_5",
               std::abs(static_cast<double>(commutant_basis(alg).size()) - 5.0));
    double iso_dev = 1.0;
    try {
      const IsotypicSummary summary = isotypic_decomposition(alg, seed);
      const IsotypicSummary expected{{{1, 4}, {2, 2}}};
      iso_dev = summary.blocks == expected.blocks ? 0.0 : 1.0;
    } catch (const IsotypicSplitError&) {
    }
    report.add("isotypic_blocks_1x4_2x2", iso_dev);
  }

  {
    const auto [plus, minus] = exchange_sector_frames(BasisFlavor::omega);
    double sector_dev = 0.0;
    double lost = std::numeric_limits<double>::infinity();
    for (const EncodedQubitFrame* f : {&plus, &minus}) {
      report.append(verify_frame(*f, tol), f->label + ".");
      for (const ComplexMatrix* o : {&f->x, &f->y, &f->z}) {
        sector_dev = std::max({sector_dev, max_abs(commutator(*o, sys.sz)),
                               max_abs(commutator(*o, sys.s2))});
      }
      lost = std::min(lost, max_abs(commutator(f->x, sys.sx)));
    }
    report.add("exchange_sectors_conserve_sz_and_s2", sector_dev);
    report.add("exchange_sectors_unprotected_shortfall", std::max(0.0, 0.1 - lost));
  }

  {
    ComplexVector zero(2);
    zero << 1.0, 0.0;
    const DensityOperator mixed(identity(2) / 2.0);
    const DensityOperator pure_gauge(DensityOperator::from_pure(random_haar_state(2, seed)));
    report.add("qubit_purity_with_mixed_gauge",
               std::abs(purity_of_protected_qubit(zero, mixed) - 1.0));
    report.add("gauge_purity_recovered", std::abs(purity_of_gauge(zero, mixed) - 0.5));
    report.add("qubit_purity_with_pure_gauge",
               std::abs(purity_of_protected_qubit(random_haar_state(2, seed + 1).amplitudes(),
                                                  pure_gauge) - 1.0));
  }
  {
    // Initialization in |~0>, read-out through singlet/triplet of spins 1 and 2.
    const EncodedQubitFrame st = noiseless_frame(BasisFlavor::singlet_triplet);
    const PureState init = prepare_initial_state();
    const auto [singlet, triplet] = singlet_triplet_readout();
    report.add("initialization_z_plus_one", std::abs(expectation(st.z, init) - 1.0));
    const ProtectedBasis basis = protected_basis(BasisFlavor::singlet_triplet);
    double readout = 0.0;
    std::mt19937_64 rng(seed);
    std::vector<ComplexVector> probes{basis.vector(0, 0), basis.vector(1, 0)};
    for (std::size_t trial = 0; trial < trials; ++trial) {
      const PureState c = random_haar_state(2, rng());
      probes.push_back(c[0] * basis.vector(0, 0) + c[1] * basis.vector(1, 0));
    }
    for (const auto& q : probes) {
      const PureState s(q);
      readout = std::max(readout, std::abs(expectation(singlet, s) -
                                           0.5 * (1.0 + expectation(st.z, s))));
      readout = std::max(readout, std::abs(expectation(singlet, s) + expectation(triplet, s) - 1.0));
    }
    report.add("singlet_triplet_readout_measures_z", readout);
  }

  report.append(noiseless_invariance_suite(trials, seed, tol), "invariance.");
  return report;
}

} // namespace qframe::collective
