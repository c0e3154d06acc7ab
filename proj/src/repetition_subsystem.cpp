#include "qframe/repetition_subsystem.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <stdexcept>

namespace qframe::repetition {

namespace {

constexpr std::array<std::size_t, 3> kQubitDims{2, 2, 2};
const std::array<std::string, kErrorCount> kSyndromeOrder{"00", "10", "11", "01"};

Eigen::Index as_index(std::size_t n) { return static_cast<Eigen::Index>(n); }

ComplexMatrix on_qubit(const ComplexMatrix& op, std::size_t qubit) {
  return embed(op, qubit, kQubitDims);
}

ComplexMatrix code_isometry() {
  ComplexMatrix c(as_index(kPhysicalDim), 2);
  c.col(0) = logical_state(0);
  c.col(1) = logical_state(1);
  return c;
}

ComplexMatrix outer(const ComplexVector& a, const ComplexVector& b) { return a * b.adjoint(); }

std::array<double, 3> frame_expectations(const EncodedQubitFrame& f, const PureState& s) {
  return {expectation(f.x, s), expectation(f.y, s), expectation(f.z, s)};
}

double max_difference(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < 3; ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

/// Sum_a phi_a E_a |psi_L>, a coherent superposition of single errors on an encoded state.
PureState errored_code_state(const ComplexVector& logical, const ComplexVector& syndrome_amps) {
  const PureState code = encode(logical(0), logical(1));
  ComplexVector out = ComplexVector::Zero(as_index(kPhysicalDim));
  for (std::size_t a = 0; a < kErrorCount; ++a) {
    out += syndrome_amps(as_index(a)) * (error_operator(a) * code.amplitudes());
  }
  return PureState::normalized(std::move(out));
}

} // namespace

DensityOperator KrausChannel::apply(const DensityOperator& rho) const {
  ComplexMatrix out = ComplexMatrix::Zero(rho.matrix().rows(), rho.matrix().cols());
  for (const auto& k : kraus) {
    out += k * rho.matrix() * k.adjoint();
  }
  return DensityOperator(std::move(out));
}

double KrausChannel::trace_preservation_deviation() const {
  if (kraus.empty()) return 1.0;
  ComplexMatrix sum = ComplexMatrix::Zero(kraus.front().cols(), kraus.front().cols());
  for (const auto& k : kraus) sum += k.adjoint() * k;
  return max_abs(sum - identity(static_cast<std::size_t>(sum.rows())));
}

ComplexVector SubsystemIso::to_factors(const ComplexVector& physical) const {
  return unitary * physical;
}

ComplexMatrix SubsystemIso::conjugate(const ComplexMatrix& op) const {
  return unitary * op * unitary.adjoint();
}

std::string SubsystemIso::label_of(std::size_t factor_index) const {
  if (factor_index >= kPhysicalDim) {
    throw std::out_of_range("SubsystemIso::label_of: index out of range");
  }
  return "|" + std::to_string(factor_index / kErrorCount) + "⟩⊗|" +
         syndrome_labels[factor_index % kErrorCount] + "⟩";
}

ComplexVector logical_state(int i) {
  if (i != 0 && i != 1) {
    throw std::out_of_range("logical_state: index must be 0 or 1");
  }
  return basis_vector(kPhysicalDim, i == 0 ? 0 : 7);
}

PureState encode(Complex c0, Complex c1, double tol) {
  const double norm2 = std::norm(c0) + std::norm(c1);
  if (std::abs(norm2 - 1.0) > tol) {
    throw std::invalid_argument("encode: amplitudes are not normalized");
  }
  return PureState(c0 * logical_state(0) + c1 * logical_state(1), tol);
}

ComplexMatrix error_operator(std::size_t a) {
  if (a >= kErrorCount) {
    throw std::out_of_range("error_operator: index must be in 0..3");
  }
  return a == 0 ? identity(kPhysicalDim) : on_qubit(pauli_x(), a - 1);
}

ComplexVector error_basis_vector(std::size_t a, int i) {
  return error_operator(a) * logical_state(i);
}

std::array<ComplexMatrix, 2> stabilizer_generators() {
  const ComplexMatrix z = pauli_z();
  return {on_qubit(z, 0) * on_qubit(z, 1), on_qubit(z, 1) * on_qubit(z, 2)};
}

std::string syndrome_of(std::size_t a) {
  const ComplexMatrix e = error_operator(a);
  std::string out;
  for (const auto& m : stabilizer_generators()) {
    if (max_abs(commutator(e, m)) < 1e-12) {
      out += '0';
    } else if (max_abs(anticommutator(e, m)) < 1e-12) {
      out += '1';
    } else {
      throw std::logic_error("syndrome_of: error neither commutes nor anti-commutes");
    }
  }
  return out;
}

nlohmann::ordered_json syndrome_table_json() {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (std::size_t a = 0; a < kErrorCount; ++a) {
    rows.push_back({{"error", "E" + std::to_string(a)}, {"syndrome", syndrome_of(a)}});
  }
  return rows;
}

KrausChannel recovery_channel() {
  KrausChannel ch;
  for (std::size_t a = 0; a < kErrorCount; ++a) {
    ComplexMatrix proj = ComplexMatrix::Zero(as_index(kPhysicalDim), as_index(kPhysicalDim));
    for (int i : {0, 1}) {
      const ComplexVector v = error_basis_vector(a, i);
      proj += outer(v, v);
    }
    ch.kraus.push_back(error_operator(a) * proj);
  }
  return ch;
}

SubsystemIso subsystem_iso_Q() {
  SubsystemIso iso;
  iso.syndrome_labels = kSyndromeOrder;
  iso.unitary = ComplexMatrix::Zero(as_index(kPhysicalDim), as_index(kPhysicalDim));
  // |v_a^i> -> |i>_q (x) |v_a^0>_E
  for (int i : {0, 1}) {
    for (std::size_t a = 0; a < kErrorCount; ++a) {
      iso.unitary.row(as_index(kErrorCount * static_cast<std::size_t>(i) + a)) =
          error_basis_vector(a, i).adjoint();
    }
  }
  return iso;
}

SubsystemIso subsystem_iso_Qprime() {
  const ComplexMatrix l = on_qubit(pauli_z(), 0);
  const auto [m1, m2] = stabilizer_generators();
  // Distinct weights make every joint eigenspace one-dimensional.
  const EigenSystem es = eigh(l + 2.0 * m1 + 4.0 * m2);

  SubsystemIso iso;
  iso.syndrome_labels = kSyndromeOrder;
  iso.unitary = ComplexMatrix::Zero(as_index(kPhysicalDim), as_index(kPhysicalDim));
  for (Eigen::Index j = 0; j < es.vectors.cols(); ++j) {
    ComplexVector v = es.vectors.col(j);
    Eigen::Index peak = 0;
    v.cwiseAbs().maxCoeff(&peak);
    v *= std::conj(v(peak)) / std::abs(v(peak));

    auto minus_label = [&v](const ComplexMatrix& op) {
      return v.dot(op * v).real() < 0.0 ? '1' : '0';
    };
    const std::size_t q = minus_label(l) == '1' ? 1 : 0;
    const std::string syndrome{minus_label(m1), minus_label(m2)};
    const auto e = static_cast<std::size_t>(
        std::find(kSyndromeOrder.begin(), kSyndromeOrder.end(), syndrome) -
        kSyndromeOrder.begin());
    iso.unitary.row(as_index(kErrorCount * q + e)) = v.adjoint();
  }
  return iso;
}

EncodedQubitFrame frame_from_errors() {
  const ComplexVector zero = logical_state(0);
  const ComplexVector one = logical_state(1);
  const ComplexMatrix z_code = outer(zero, zero) - outer(one, one);
  const ComplexMatrix x_code = outer(zero, one) + outer(one, zero);

  EncodedQubitFrame frame;
  frame.label = "repetition";
  frame.support = identity(kPhysicalDim);
  frame.z = ComplexMatrix::Zero(as_index(kPhysicalDim), as_index(kPhysicalDim));
  frame.x = frame.z;
  for (std::size_t a = 0; a < kErrorCount; ++a) {
    const ComplexMatrix e = error_operator(a);
    frame.z += e * z_code * e;
    frame.x += e * x_code * e;
  }
  frame.y = -kI * frame.z * frame.x;
  return frame;
}

OperatorAlgebra noise_recovery_algebra() {
  const KrausChannel rec = recovery_channel();
  std::vector<ComplexMatrix> gens;
  for (std::size_t b = 0; b < kErrorCount; ++b) {
    for (std::size_t a = 0; a < kErrorCount; ++a) {
      gens.push_back(error_operator(b) * rec.kraus[a]);
    }
  }
  return OperatorAlgebra(std::move(gens));
}

VerificationReport invariance_suite(std::size_t trials, std::uint64_t seed, double tol) {
  VerificationReport report("repetition_invariance", tol, seed);
  if (trials == 0) {
    return report;
  }
  const EncodedQubitFrame frame = frame_from_errors();
  const KrausChannel rec = recovery_channel();
  std::vector<ComplexMatrix> words;
  for (std::size_t b = 0; b < kErrorCount; ++b) {
    for (std::size_t a = 0; a < kErrorCount; ++a) {
      words.push_back(error_operator(b) * rec.kraus[a]);
    }
  }
  const ComplexMatrix paulis[3] = {pauli_x(), pauli_y(), pauli_z()};

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, kErrorCount - 1);
  double logical_match = 0.0;
  double single_error = 0.0;
  double one_word = 0.0;
  double two_words = 0.0;
  double channel = 0.0;

  // Word applied to a state, renormalized; words that annihilate the state carry no outcome.
  auto apply_word = [](const ComplexMatrix& w, const PureState& s) -> std::optional<PureState> {
    ComplexVector out = w * s.amplitudes();
    if (out.norm() < 1e-6) return std::nullopt;
    return PureState::normalized(std::move(out));
  };

  for (std::size_t trial = 0; trial < trials; ++trial) {
    const PureState logical = random_haar_state(2, rng());
    const PureState syndrome = random_haar_state(kErrorCount, rng());
    const PureState code = encode(logical[0], logical[1]);
    const PureState state = errored_code_state(logical.amplitudes(), syndrome.amplitudes());

    const auto reference = frame_expectations(frame, code);
    std::array<double, 3> pauli_values{};
    for (std::size_t i = 0; i < 3; ++i) pauli_values[i] = expectation(paulis[i], logical);
    logical_match = std::max({logical_match, max_difference(reference, pauli_values),
                              max_difference(reference, frame_expectations(frame, state))});

    for (std::size_t a = 0; a < kErrorCount; ++a) {
      const PureState hit = PureState::normalized(error_operator(a) * code.amplitudes());
      single_error = std::max(single_error, max_difference(reference, frame_expectations(frame, hit)));
    }
    for (const auto& w : words) {
      for (const PureState* input : {&code, &state}) {
        if (auto out = apply_word(w, *input)) {
          one_word = std::max(one_word, max_difference(reference, frame_expectations(frame, *out)));
        }
      }
    }
    // ... E_b' R_a' E_b R_a
    for (int rep = 0; rep < 4; ++rep) {
      const ComplexMatrix w = error_operator(pick(rng)) * rec.kraus[pick(rng)] *
                              error_operator(pick(rng)) * rec.kraus[pick(rng)];
      if (auto out = apply_word(w, state)) {
        two_words = std::max(two_words, max_difference(reference, frame_expectations(frame, *out)));
      }
    }
    const DensityOperator restored = rec.apply(DensityOperator::from_pure(state));
    channel = std::max(channel, max_abs(restored.matrix() - DensityOperator::from_pure(code).matrix()));
  }
  report.add("encoded_expectations_match_logical", logical_match);
  report.add("single_error_invariance", single_error);
  report.add("error_recovery_word_invariance", one_word);
  report.add("two_word_sequence_invariance", two_words);
  report.add("recovery_restores_coherent_errors", channel);
  report.append(frame_commutes_with(frame, noise_recovery_algebra(), tol), "frame_");
  return report;
}

VerificationReport suite(std::size_t trials, std::uint64_t seed, double tol) {
  VerificationReport report("repetition", tol, seed);

  {
    double dev = 0.0;
    for (std::size_t a = 0; a < kErrorCount; ++a) {
      const ComplexMatrix e = error_operator(a);
      dev = std::max({dev, hermiticity_deviation(e), max_abs(e * e - identity(kPhysicalDim))});
    }
    report.add("errors_are_involutions", dev);
  }
  {
    ComplexMatrix v(as_index(kPhysicalDim), as_index(kPhysicalDim));
    for (int i : {0, 1}) {
      for (std::size_t a = 0; a < kErrorCount; ++a) {
        v.col(as_index(kErrorCount * static_cast<std::size_t>(i) + a)) = error_basis_vector(a, i);
      }
    }
    report.add("error_basis_orthonormal", unitarity_deviation(v));
  }
  {
    double mismatches = 0.0;
    for (std::size_t a = 0; a < kErrorCount; ++a) {
      if (syndrome_of(a) != kSyndromeOrder[a]) mismatches += 1.0;
    }
    report.add("syndrome_table", mismatches);
  }

  const KrausChannel rec = recovery_channel();
  report.add("recovery_trace_preserving", rec.trace_preservation_deviation());
  {
    // R_a E_b restricted to the code is a multiple of the identity; |lambda| = 1 when a = b.
    const ComplexMatrix c = code_isometry();
    double dev = 0.0;
    for (std::size_t a = 0; a < kErrorCount; ++a) {
      for (std::size_t b = 0; b < kErrorCount; ++b) {
        const ComplexMatrix m = c.adjoint() * rec.kraus[a] * error_operator(b) * c;
        const Complex lambda = m(0, 0);
        dev = std::max(dev, max_abs(m - lambda * identity(2)));
        const double mod = std::abs(lambda);
        dev = std::max(dev, a == b ? std::abs(mod - 1.0) : std::min(mod, std::abs(mod - 1.0)));
      }
    }
    report.add("recovery_times_error_is_scalar_on_code", dev);
  }
  {
    const PureState code = encode(0.6, Complex(0.0, 0.8));
    const DensityOperator rho = DensityOperator::from_pure(code);
    double restore = 0.0;
    for (std::size_t a = 0; a < kErrorCount; ++a) {
      const ComplexMatrix e = error_operator(a);
      const DensityOperator hit(e * rho.matrix() * e);
      restore = std::max(restore, max_abs(rec.apply(hit).matrix() - rho.matrix()));
    }
    report.add("recovery_undoes_single_errors", restore);

    double idem = 0.0;
    std::vector<DensityOperator> inputs{DensityOperator(identity(kPhysicalDim) / 8.0), rho};
    for (std::size_t idx = 0; idx < kPhysicalDim; ++idx) {
      const ComplexVector v = basis_vector(kPhysicalDim, idx);
      inputs.emplace_back(outer(v, v));
    }
    for (const auto& in : inputs) {
      const DensityOperator once = rec.apply(in);
      idem = std::max(idem, max_abs(rec.apply(once).matrix() - once.matrix()));
    }
    report.add("recovery_idempotent", idem);
  }

  const SubsystemIso iso = subsystem_iso_Q();
  report.add("iso_q_unitary", unitarity_deviation(iso.unitary));
  {
    const Complex c0 = 0.6;
    const Complex c1(0.0, 0.8);
    ComplexVector q(2);
    q << c0, c1;
    double dev = 0.0;
    for (std::size_t a = 0; a < kErrorCount; ++a) {
      const ComplexVector image =
          iso.to_factors(error_operator(a) * encode(c0, c1).amplitudes());
      dev = std::max(dev, max_abs(image - kron(q, basis_vector(kErrorCount, a))));
    }
    report.add("iso_q_errors_only_move_syndrome", dev);

    double reset = 0.0;
    for (std::size_t a = 0; a < kErrorCount; ++a) {
      const ComplexMatrix expected =
          kron(identity(2), outer(basis_vector(kErrorCount, 0), basis_vector(kErrorCount, a)));
      reset = std::max(reset, max_abs(iso.conjugate(rec.kraus[a]) - expected));
    }
    report.add("iso_q_recovery_resets_syndrome", reset);
  }

  const EncodedQubitFrame frame = frame_from_errors();
  report.append(verify_frame(frame, tol), "frame.");
  {
    const ComplexMatrix id4 = identity(kErrorCount);
    report.add("iso_q_frame_is_pauli_on_q",
               std::max({max_abs(iso.conjugate(frame.x) - kron(pauli_x(), id4)),
                         max_abs(iso.conjugate(frame.y) - kron(pauli_y(), id4)),
                         max_abs(iso.conjugate(frame.z) - kron(pauli_z(), id4))}));
    double normalizer = 0.0;
    for (const auto& m : stabilizer_generators()) {
      for (const ComplexMatrix* o : {&frame.x, &frame.y, &frame.z}) {
        normalizer = std::max(normalizer, max_abs(commutator(*o, m)));
      }
    }
    report.add("frame_commutes_with_stabilizers", normalizer);
  }

  const SubsystemIso iso_p = subsystem_iso_Qprime();
  report.add("iso_qprime_unitary", unitarity_deviation(iso_p.unitary));
  {
    // |000> -> |0>|00>, |111> -> |1>|00>, |011> -> |0>|10>, |100> -> |1>|10>
    const std::array<std::pair<std::size_t, std::string>, 4> displayed{
        {{0b000, "|0⟩⊗|00⟩"}, {0b111, "|1⟩⊗|00⟩"}, {0b011, "|0⟩⊗|10⟩"}, {0b100, "|1⟩⊗|10⟩"}}};
    double mismatches = 0.0;
    for (const auto& [idx, label] : displayed) {
      const ComplexVector image = iso_p.to_factors(basis_vector(kPhysicalDim, idx));
      Eigen::Index peak = 0;
      image.cwiseAbs().maxCoeff(&peak);
      if (iso_p.label_of(static_cast<std::size_t>(peak)) != label ||
          std::abs(image(peak) - 1.0) > tol) {
        mismatches += 1.0;
      }
    }
    report.add("iso_qprime_displayed_correspondence", mismatches);

    const Complex c0 = 0.6;
    const Complex c1(0.0, 0.8);
    ComplexVector flipped(2);
    flipped << c1, c0;
    const ComplexVector image = iso_p.to_factors(error_operator(1) * encode(c0, c1).amplitudes());
    // Syndrome "10" sits at index 1 of the syndrome order.
    report.add("iso_qprime_e1_flips_qubit",
               max_abs(image - kron(flipped, basis_vector(kErrorCount, 1))));

    // The q' factor is not protected: E1 moves |0>_q' to |1>_q'.
    const ComplexVector moved = iso_p.to_factors(error_operator(1) * encode(1.0, 0.0).amplitudes());
    const DensityOperator reduced = partial_trace(
        DensityOperator::from_pure(PureState::normalized(moved)), std::array<std::size_t, 2>{2, 4},
        std::array<std::size_t, 1>{0});
    const double distance = 1.0 - reduced.matrix()(0, 0).real();
    report.add("iso_qprime_not_protected_shortfall", std::max(0.0, 0.5 - distance));

    const ComplexMatrix flip = on_qubit(pauli_x(), 0) * on_qubit(pauli_x(), 1) *
                               on_qubit(pauli_x(), 2);
    report.add("iso_qprime_global_flip_real_positive",
               max_abs(iso_p.conjugate(flip) - kron(pauli_x(), identity(kErrorCount))));
  }

  report.append(invariance_suite(trials, seed, tol), "invariance.");
  return report;
}

} // namespace qframe::repetition
