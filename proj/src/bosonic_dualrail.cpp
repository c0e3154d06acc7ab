#include "qframe/bosonic_dualrail.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

namespace qframe::bosonic {

namespace {

Eigen::Index as_index(std::size_t n) { return static_cast<Eigen::Index>(n); }

ComplexMatrix single_mode_annihilation(std::size_t cutoff) {
  ComplexMatrix a = ComplexMatrix::Zero(as_index(cutoff + 1), as_index(cutoff + 1));
  for (std::size_t n = 1; n <= cutoff; ++n) {
    a(as_index(n - 1), as_index(n)) = std::sqrt(static_cast<double>(n));
  }
  return a;
}

std::vector<std::size_t> mode_dims(const FockConfig& config) {
  return std::vector<std::size_t>(config.num_modes(), config.mode_dim());
}

/// Diagonal operator whose entries come from a predicate on the occupation list.
template <typename F>
ComplexMatrix diagonal_from(const FockConfig& config, F&& entry) {
  const std::size_t n = config.ambient_dim();
  ComplexMatrix out = ComplexMatrix::Zero(as_index(n), as_index(n));
  for (std::size_t idx = 0; idx < n; ++idx) {
    out(as_index(idx), as_index(idx)) = entry(config.occupations_of(idx));
  }
  return out;
}

void check_pair(const FockConfig& config, std::size_t k, std::size_t kp) {
  config.check_mode(k);
  config.check_mode(kp);
  if (k == kp) {
    throw std::invalid_argument("dual-rail pair must use two distinct modes");
  }
}

void require_cutoff_two(const FockConfig& config, const char* what) {
  if (config.cutoff() < 2) {
    throw std::invalid_argument(std::string(what) + ": needs cutoff >= 2");
  }
}

} // namespace

FockConfig::FockConfig(std::size_t num_modes, std::size_t cutoff)
    : num_modes_(num_modes), cutoff_(cutoff), ambient_dim_(1) {
  if (num_modes == 0 || num_modes % 2 != 0) {
    throw std::invalid_argument("FockConfig: number of modes must be even and positive");
  }
  if (cutoff == 0) {
    throw std::invalid_argument("FockConfig: cutoff must be at least 1");
  }
  for (std::size_t i = 0; i < num_modes; ++i) {
    ambient_dim_ *= cutoff + 1;
  }
}

std::size_t FockConfig::index_of(const std::vector<std::size_t>& occupations) const {
  if (occupations.size() != num_modes_) {
    throw std::invalid_argument("FockConfig: occupation list has the wrong length");
  }
  std::size_t idx = 0;
  for (std::size_t n : occupations) {
    if (n > cutoff_) {
      throw std::invalid_argument("FockConfig: occupation exceeds the cutoff");
    }
    idx = idx * mode_dim() + n;
  }
  return idx;
}

std::vector<std::size_t> FockConfig::occupations_of(std::size_t index) const {
  if (index >= ambient_dim_) {
    throw std::out_of_range("FockConfig: basis index out of range");
  }
  std::vector<std::size_t> occ(num_modes_);
  for (std::size_t m = num_modes_; m-- > 0;) {
    occ[m] = index % mode_dim();
    index /= mode_dim();
  }
  return occ;
}

void FockConfig::check_mode(std::size_t k) const {
  if (k < 1 || k > num_modes_) {
    throw std::out_of_range("mode index " + std::to_string(k) + " outside 1.." +
                            std::to_string(num_modes_));
  }
}

std::string FockBasisState::to_string() const {
  std::ostringstream os;
  os << "|";
  for (std::size_t i = 0; i < occupations.size(); ++i) {
    if (i > 0) os << ' ';
    os << occupations[i];
  }
  os << "⟩";
  return os.str();
}

ComplexMatrix annihilation(const FockConfig& config, std::size_t k) {
  config.check_mode(k);
  const auto dims = mode_dims(config);
  return embed(single_mode_annihilation(config.cutoff()), k - 1, dims);
}

ComplexMatrix creation(const FockConfig& config, std::size_t k) {
  return annihilation(config, k).adjoint();
}

ComplexMatrix number(const FockConfig& config, std::size_t k) {
  config.check_mode(k);
  return diagonal_from(config, [k](const std::vector<std::size_t>& occ) {
    return Complex(static_cast<double>(occ[k - 1]), 0.0);
  });
}

PureState fock_state(const FockConfig& config, const std::vector<std::size_t>& occupations) {
  return PureState(basis_vector(config.ambient_dim(), config.index_of(occupations)));
}

ComplexMatrix dual_rail_projector(const FockConfig& config, std::size_t k, std::size_t kp) {
  check_pair(config, k, kp);
  return diagonal_from(config, [k, kp](const std::vector<std::size_t>& occ) {
    return Complex(occ[k - 1] + occ[kp - 1] == 1 ? 1.0 : 0.0, 0.0);
  });
}

EncodedQubitFrame dual_rail_frame(const FockConfig& config, std::size_t k, std::size_t kp) {
  check_pair(config, k, kp);
  const ComplexMatrix p = dual_rail_projector(config, k, kp);
  const ComplexMatrix a = annihilation(config, k);
  const ComplexMatrix b = annihilation(config, kp);

  EncodedQubitFrame frame;
  frame.label = "dual_rail(" + std::to_string(k) + "," + std::to_string(kp) + ")";
  frame.support = p;
  frame.z = (number(config, kp) - number(config, k)) * p;
  frame.x = (a.adjoint() * b + a * b.adjoint()) * p;
  frame.y = -kI * frame.z * frame.x;
  return frame;
}

ComplexMatrix phase_shifter(const FockConfig& config, std::size_t k, double phi) {
  config.check_mode(k);
  return diagonal_from(config, [k, phi](const std::vector<std::size_t>& occ) {
    return std::exp(-kI * phi * static_cast<double>(occ[k - 1]));
  });
}

ComplexMatrix beam_splitter(const FockConfig& config, std::size_t k, std::size_t l, double theta,
                            double phi) {
  check_pair(config, k, l);
  const ComplexMatrix a = annihilation(config, k);
  const ComplexMatrix b = annihilation(config, l);
  // exp(G) with G anti-Hermitian equals exp(-i H) for the Hermitian H = i G.
  const ComplexMatrix generator =
      theta * (std::exp(kI * phi) * a.adjoint() * b - std::exp(-kI * phi) * a * b.adjoint());
  return evolve(kI * generator, 1.0);
}

ComplexMatrix ns_gate(const FockConfig& config, std::size_t k) {
  config.check_mode(k);
  require_cutoff_two(config, "ns_gate");
  return diagonal_from(config, [k](const std::vector<std::size_t>& occ) {
    return Complex(occ[k - 1] >= 2 ? -1.0 : 1.0, 0.0);
  });
}

ComplexMatrix csign(const FockConfig& config, ModePair q1_modes, ModePair q2_modes,
                    double theta_bs, double phi_bs) {
  require_cutoff_two(config, "csign");
  check_pair(config, q1_modes.first, q1_modes.second);
  check_pair(config, q2_modes.first, q2_modes.second);
  logical_projector(config, {q1_modes, q2_modes}); // rejects overlapping pairs

  const std::size_t m1 = q1_modes.first;
  const std::size_t m2 = q2_modes.first;
  const ComplexMatrix bs = beam_splitter(config, m1, m2, theta_bs, phi_bs);
  return bs.adjoint() * ns_gate(config, m1) * ns_gate(config, m2) * bs;
}

ComplexMatrix logical_projector(const FockConfig& config, const std::vector<ModePair>& pairs) {
  std::vector<bool> used(config.num_modes() + 1, false);
  for (const auto& [k, kp] : pairs) {
    check_pair(config, k, kp);
    if (used[k] || used[kp]) {
      throw std::invalid_argument("logical_projector: mode pairs overlap");
    }
    used[k] = used[kp] = true;
  }
  return diagonal_from(config, [&pairs](const std::vector<std::size_t>& occ) {
    for (const auto& [k, kp] : pairs) {
      if (occ[k - 1] + occ[kp - 1] != 1) return Complex(0.0, 0.0);
    }
    return Complex(1.0, 0.0);
  });
}

double leakage(const PureState& state, const FockConfig& config,
               const std::vector<ModePair>& pairs) {
  if (state.dim() != config.ambient_dim()) {
    throw DimensionError("leakage: state does not live on this Fock space");
  }
  const ComplexMatrix p = logical_projector(config, pairs);
  const double kept = state.amplitudes().dot(p * state.amplitudes()).real();
  return std::clamp(1.0 - kept, 0.0, 1.0);
}

std::vector<ModePair> default_pairs(const FockConfig& config) {
  std::vector<ModePair> pairs;
  for (std::size_t k = 1; k < config.num_modes(); k += 2) {
    pairs.emplace_back(k, k + 1);
  }
  return pairs;
}

PureState prepare_logical(const FockConfig& config, const std::vector<int>& bits) {
  if (bits.size() != config.num_modes() / 2) {
    throw std::invalid_argument("prepare_logical: need one bit per mode pair");
  }
  std::vector<std::size_t> occ(config.num_modes(), 0);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] != 0 && bits[i] != 1) {
      throw std::invalid_argument("prepare_logical: bits must be 0 or 1");
    }
    // |0>_q = |0>_k |1>_k',  |1>_q = |1>_k |0>_k'
    occ[2 * i] = bits[i] == 1 ? 1 : 0;
    occ[2 * i + 1] = bits[i] == 1 ? 0 : 1;
  }
  return fock_state(config, occ);
}

ComplexMatrix logical_basis(const FockConfig& config) {
  const std::size_t qubits = config.num_modes() / 2;
  const std::size_t count = std::size_t{1} << qubits;
  ComplexMatrix basis(as_index(config.ambient_dim()), as_index(count));
  for (std::size_t b = 0; b < count; ++b) {
    std::vector<int> bits(qubits);
    for (std::size_t i = 0; i < qubits; ++i) {
      bits[i] = static_cast<int>((b >> (qubits - 1 - i)) & 1U);
    }
    basis.col(as_index(b)) = prepare_logical(config, bits).amplitudes();
  }
  return basis;
}

ComplexMatrix restrict_to_logical(const FockConfig& config, const ComplexMatrix& op) {
  const ComplexMatrix basis = logical_basis(config);
  if (op.rows() != basis.rows() || op.cols() != basis.rows()) {
    throw DimensionError("restrict_to_logical: operator does not live on this Fock space");
  }
  return basis.adjoint() * op * basis;
}

double deviation_up_to_phase(const ComplexMatrix& actual, const ComplexMatrix& target) {
  if (actual.rows() != target.rows() || actual.cols() != target.cols()) {
    throw DimensionError("deviation_up_to_phase: shape mismatch");
  }
  Eigen::Index r = 0;
  Eigen::Index c = 0;
  target.cwiseAbs().maxCoeff(&r, &c);
  Complex phase(1.0, 0.0);
  if (std::abs(actual(r, c)) > 0.0 && std::abs(target(r, c)) > 0.0) {
    const Complex ratio = actual(r, c) / target(r, c);
    phase = ratio / std::abs(ratio);
  }
  return max_abs(actual - phase * target);
}

std::vector<double> photon_count_distribution(const PureState& state, const FockConfig& config,
                                              std::size_t k) {
  config.check_mode(k);
  if (state.dim() != config.ambient_dim()) {
    throw DimensionError("photodetect: state does not live on this Fock space");
  }
  std::vector<double> probs(config.cutoff() + 1, 0.0);
  for (std::size_t idx = 0; idx < config.ambient_dim(); ++idx) {
    probs[config.occupations_of(idx)[k - 1]] += std::norm(state[idx]);
  }
  return probs;
}

DetectionResult photodetect(const PureState& state, const FockConfig& config, std::size_t k,
                            std::uint64_t seed) {
  const std::vector<double> probs = photon_count_distribution(state, config, k);
  std::mt19937_64 rng(seed);
  const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);

  std::size_t outcome = 0;
  double cumulative = 0.0;
  for (std::size_t n = 0; n < probs.size(); ++n) {
    if (probs[n] <= 0.0) continue;
    outcome = n;
    cumulative += probs[n];
    if (u < cumulative) break;
  }
  if (probs[outcome] <= 0.0) {
    throw std::runtime_error("photodetect: zero-norm projection");
  }

  ComplexVector projected = ComplexVector::Zero(as_index(config.ambient_dim()));
  for (std::size_t idx = 0; idx < config.ambient_dim(); ++idx) {
    if (config.occupations_of(idx)[k - 1] == outcome) {
      projected(as_index(idx)) = state[idx];
    }
  }
  return {outcome, PureState::normalized(std::move(projected)), probs[outcome]};
}

std::vector<AngleScanPoint> csign_angle_scan(std::size_t steps) {
  const FockConfig config(4, 2);
  ComplexMatrix target = ComplexMatrix::Identity(4, 4);
  target(3, 3) = -1.0;
  std::vector<AngleScanPoint> out;
  for (std::size_t s = 0; s < steps; ++s) {
    const double theta =
        steps == 1 ? 0.0 : std::numbers::pi / 2.0 * static_cast<double>(s) / (steps - 1.0);
    const ComplexMatrix u = csign(config, {1, 2}, {3, 4}, theta, 0.0);
    out.push_back({theta, deviation_up_to_phase(restrict_to_logical(config, u), target)});
  }
  return out;
}

double pair_number_identity_deviation(const FockConfig& config) {
  double dev = 0.0;
  for (std::size_t k = 1; k <= config.num_modes(); ++k) {
    const ComplexMatrix nk = number(config, k);
    for (std::size_t kp = k + 1; kp <= config.num_modes(); ++kp) {
      const ComplexMatrix p = dual_rail_projector(config, k, kp);
      const ComplexMatrix n = nk + number(config, kp);
      const ComplexMatrix pn = p * n;
      const ComplexMatrix np = n * p;
      dev = std::max({dev, max_abs(pn - np), max_abs(pn * p - pn)});
    }
  }
  return dev;
}

VerificationReport suite(std::size_t cutoff, std::size_t trials, std::uint64_t seed, double tol) {
  if (cutoff < 2) {
    throw std::invalid_argument("bosonic suite: the NS and c-sign checks need cutoff >= 2");
  }
  VerificationReport report("bosonic", tol, seed);
  const FockConfig two(2, cutoff);
  const FockConfig four(4, cutoff);
  const auto pairs = default_pairs(four);

  // Encoded observables on a single pair and on the second pair of a two-qubit register.
  const EncodedQubitFrame q1 = dual_rail_frame(two, 1, 2);
  report.append(verify_frame(q1, tol), "frame_q1.");
  report.append(verify_frame(dual_rail_frame(four, 3, 4), tol), "frame_q2.");
  report.add("projector_trace_one_pair", std::abs(dual_rail_projector(two, 1, 2).trace() - 2.0));

  // Ladder algebra: [a_k, a_j] = 0 for k != j, and [a, a^dag] = 1 below the cutoff.
  {
    const ComplexMatrix a1 = annihilation(four, 1);
    const ComplexMatrix a3 = annihilation(four, 3);
    report.add("ladder_distinct_modes_commute",
               std::max(max_abs(commutator(a1, a3)), max_abs(commutator(a1, a3.adjoint()))));
    const ComplexMatrix below = diagonal_from(two, [cutoff](const std::vector<std::size_t>& occ) {
      return Complex(occ[0] < cutoff ? 1.0 : 0.0, 0.0);
    });
    const ComplexMatrix a = annihilation(two, 1);
    report.add("ladder_canonical_below_cutoff",
               max_abs(below * (commutator(a, a.adjoint()) - identity(two.ambient_dim())) * below));
  }

  report.add("pair_number_identity", pair_number_identity_deviation(four));

  // Unitary control: Z_q and X_q rotations are a phase-shifter pair and a beam splitter.
  {
    const double t = 0.731;
    const ComplexMatrix z_rot = evolve(q1.z, t);
    const ComplexMatrix ps = phase_shifter(two, 2, t) * phase_shifter(two, 1, -t);
    const ComplexMatrix x_rot = evolve(q1.x, t);
    const ComplexMatrix bs = beam_splitter(two, 1, 2, t, -std::numbers::pi / 2.0);
    report.add("z_rotation_is_phase_shifters",
               max_abs(restrict_to_logical(two, z_rot) - restrict_to_logical(two, ps)));
    report.add("x_rotation_is_beam_splitter",
               max_abs(restrict_to_logical(two, x_rot) - restrict_to_logical(two, bs)));
  }

  // Conditional sign flip through the beam splitter / NS / beam splitter sequence.
  {
    const double theta = std::numbers::pi / 4.0;
    const ComplexMatrix cz = csign(four, {1, 2}, {3, 4}, theta, 0.0);
    ComplexMatrix target = ComplexMatrix::Identity(4, 4);
    target(3, 3) = -1.0;
    report.add("csign_logical_diag_1_1_1_m1",
               deviation_up_to_phase(restrict_to_logical(four, cz), target));
    report.add("csign_unitary", unitarity_deviation(cz));
    ComplexMatrix total = ComplexMatrix::Zero(cz.rows(), cz.cols());
    for (std::size_t k = 1; k <= 4; ++k) total += number(four, k);
    report.add("csign_conserves_photon_number", max_abs(commutator(cz, total)));
    report.add("ns_gate_unitary", unitarity_deviation(ns_gate(four, 1)));

    const PureState in = prepare_logical(four, {1, 1});
    const ComplexMatrix bs = beam_splitter(four, 1, 3, theta, 0.0);
    const PureState mid = PureState::normalized(bs * in.amplitudes());
    // Stroboscopic existence: the register leaves the logical space mid-gate and comes back.
    report.add("csign_intermediate_leaves_logical_space",
               std::max(0.0, 0.05 - leakage(mid, four, pairs)));
    report.add("csign_output_returns_to_logical_space",
               leakage(PureState::normalized(cz * in.amplitudes()), four, pairs));
  }

  // Initialization and read-out.
  {
    double init = 0.0;
    for (int bit : {0, 1}) {
      const PureState s = prepare_logical(two, {bit});
      init = std::max({init, leakage(s, two, default_pairs(two)),
                       std::abs(expectation(q1.z, s) - (bit == 0 ? 1.0 : -1.0))});
    }
    report.add("initialization_logical_states", init);
  }

  if (trials > 0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    const ComplexMatrix basis = logical_basis(two);
    double stay = 0.0;
    double readout = 0.0;
    double born = 0.0;
    double conserve = 0.0;
    ComplexMatrix total = number(two, 1) + number(two, 2);
    for (std::size_t trial = 0; trial < trials; ++trial) {
      const std::uint64_t trial_seed = rng();
      const ComplexVector q = random_haar_state(2, trial_seed).amplitudes();
      const PureState logical = PureState::normalized(basis * q);
      const double t = angle(rng);
      for (const ComplexMatrix* gen : {&q1.x, &q1.y, &q1.z}) {
        const PureState evolved = PureState::normalized(evolve(*gen, t) * logical.amplitudes());
        stay = std::max(stay, leakage(evolved, two, default_pairs(two)));
      }
      // A photon in mode k signals |1>_q: P(n_k = 1) = (1 - <Z_q>) / 2.
      const auto probs = photon_count_distribution(logical, two, 1);
      readout = std::max(readout, std::abs(probs[1] - 0.5 * (1.0 - expectation(q1.z, logical))));
      double sum = 0.0;
      for (double p : probs) sum += p;
      born = std::max(born, std::abs(sum - 1.0));

      const PureState any = random_haar_state(two.ambient_dim(), trial_seed + 1);
      const ComplexMatrix bs = beam_splitter(two, 1, 2, angle(rng), angle(rng));
      const PureState out = PureState::normalized(bs * any.amplitudes());
      conserve = std::max(conserve, std::abs(expectation(total, out) - expectation(total, any)));
    }
    report.add("random_rotations_stay_logical", stay);
    report.add("random_readout_matches_z", readout);
    report.add("random_born_probabilities_sum_to_one", born);
    report.add("random_beam_splitter_conserves_number", conserve);
  }
  return report;
}

} // namespace qframe::bosonic
