#include "qframe/workbench.hpp"

#include "qframe/bosonic_dualrail.hpp"
#include "qframe/collective_noise.hpp"
#include "qframe/repetition_subsystem.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <future>
#include <iomanip>
#include <sstream>
#include <utility>
#include <vector>

namespace qframe::workbench {

namespace {

std::vector<Suite> modules_of(Suite suite) {
  if (suite == Suite::all) {
    return {Suite::algebra, Suite::bosonic, Suite::repetition, Suite::collective};
  }
  return {suite};
}

bool needs_sign_gate(Suite suite) { return suite == Suite::bosonic || suite == Suite::all; }

double shortfall(bool ok) { return ok ? 0.0 : 1.0; }

double count_mismatch(std::size_t actual, std::size_t expected) {
  return std::abs(static_cast<double>(actual) - static_cast<double>(expected));
}

/// Generic operator-algebra checks that do not belong to a single construction.
VerificationReport algebra_suite(const SuiteConfig& config, std::uint64_t seed) {
  VerificationReport report("algebra", config.tolerance, seed);
  const double tol = config.tolerance;

  const EncodedQubitFrame pauli = pauli_frame();
  report.append(verify_frame(pauli, tol), "pauli_frame.");

  EncodedQubitFrame broken = pauli;
  broken.y = 0.5 * broken.y;
  report.add("half_y_fails_anticommutation",
             shortfall(!verify_frame(broken, tol).find("anticommutation").pass));

  const OperatorAlgebra paulis({pauli.x, pauli.y, pauli.z});
  report.add("pauli_commutant_is_scalars", count_mismatch(commutant_basis(paulis).size(), 1));
  report.add("pauli_algebra_is_full_matrix_algebra",
             count_mismatch(generated_algebra_basis(paulis).size(), 4));

  ComplexMatrix diag = ComplexMatrix::Zero(3, 3);
  diag(0, 0) = 1.0;
  diag(1, 1) = 1.0;
  diag(2, 2) = 2.0;
  const OperatorAlgebra degenerate({diag});
  report.add("degenerate_diagonal_commutant_dim_5",
             count_mismatch(commutant_basis(degenerate).size(), 5));

  // The identity lies in every commutant.
  {
    const std::vector<ComplexMatrix> basis = commutant_basis(degenerate);
    const ComplexMatrix id = identity(3);
    ComplexMatrix projected = ComplexMatrix::Zero(3, 3);
    for (const auto& b : basis) {
      projected += (b.adjoint() * id).trace() * b;
    }
    report.add("identity_in_commutant", max_abs(projected - id));
  }

  // Bicommutant equals the span of words for both noise algebras.
  const std::array<std::pair<std::string, OperatorAlgebra>, 2> noise{{
      {"repetition", repetition::noise_recovery_algebra()},
      {"collective", collective::total_spin_ops(3).algebra()},
  }};
  for (const auto& [name, alg] : noise) {
    const std::size_t words = generated_algebra_basis(alg).size();
    const std::size_t bicommutant = commutant_basis(OperatorAlgebra(commutant_basis(alg))).size();
    report.add(name + "_bicommutant_equals_word_span", count_mismatch(bicommutant, words));
  }

  IsotypicSummary rep;
  try {
    rep = isotypic_decomposition(repetition::noise_recovery_algebra(), seed);
  } catch (const IsotypicSplitError&) {
  }
  report.add("repetition_isotypic_has_2x4_block", shortfall(rep.contains(2, 4)));
  report.add("repetition_isotypic_covers_space", count_mismatch(rep.ambient_dim(), 8));
  report.add("repetition_commutant_dim_4",
             count_mismatch(commutant_basis(repetition::noise_recovery_algebra()).size(), 4));

  const PureState up(basis_vector(2, 0));
  report.add("pauli_z_on_up_is_one", std::abs(expectation(pauli.z, up) - 1.0));
  return report;
}

VerificationReport run_module(Suite module, const SuiteConfig& config) {
  const std::uint64_t seed = child_seed(config.seed, to_string(module));
  switch (module) {
  case Suite::bosonic:
    return bosonic::suite(config.cutoff, config.trials, seed, config.tolerance);
  case Suite::repetition:
    return repetition::suite(config.trials, seed, config.tolerance);
  case Suite::collective:
    return collective::suite(config.trials, seed, config.tolerance);
  case Suite::algebra:
    return algebra_suite(config, seed);
  case Suite::all:
    break;
  }
  throw std::logic_error("run_module: 'all' is not a module");
}

std::string format_deviation(double value) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(3) << value;
  return os.str();
}

using DescribeTable = std::vector<std::pair<std::string, std::string>>;

const DescribeTable& bosonic_table() {
  static const DescribeTable table{
      {"frame_q*.*", "dual-rail frame: P = sum over n+n'=1, Z = (n_k' - n_k) P, X = (a^dag b + a b^dag) P"},
      {"projector_trace_one_pair", "one photon in a mode pair spans exactly two states"},
      {"ladder_*", "[a_k, a_j] = 0 for k != j, [a, a^dag] = 1 below the cutoff"},
      {"pair_number_identity", "P (n_k + n_k') = (n_k + n_k') P = P (n_k + n_k') P"},
      {"z_rotation_is_phase_shifters", "exp(-i t Z_q / 2) is a pair of opposite phase shifters on the code"},
      {"x_rotation_is_beam_splitter", "exp(-i t X_q / 2) is a beam splitter on the code"},
      {"csign_logical_diag_1_1_1_m1", "c-sign = BS^dag (NS (x) NS) BS restricted to the code is diag(1,1,1,-1)"},
      {"csign_unitary", "c-sign composition is unitary"},
      {"csign_conserves_photon_number", "c-sign commutes with total photon number"},
      {"ns_gate_unitary", "nonlinear sign gate: -1 on two or more photons"},
      {"csign_intermediate_leaves_logical_space", "after the first beam splitter |1010> leaves the code"},
      {"csign_output_returns_to_logical_space", "the full c-sign returns every code state to the code"},
      {"initialization_logical_states", "|01> and |10> prepare Z = +1 and Z = -1"},
      {"random_rotations_stay_logical", "evolve(Z_q, t), evolve(X_q, t) keep code states in the code"},
      {"random_readout_matches_z", "photodetection statistics reproduce <Z_q>"},
      {"random_born_probabilities_sum_to_one", "photon-count distributions are normalized"},
      {"random_beam_splitter_conserves_number", "beam splitters conserve photon number"},
  };
  return table;
}

const DescribeTable& repetition_table() {
  static const DescribeTable table{
      {"errors_are_involutions", "E_a = 1, X_1, X_2, X_3 with E_a^2 = 1"},
      {"error_basis_orthonormal", "|v_a^i> = E_a |i_L> is an orthonormal basis"},
      {"syndrome_table", "syndromes of Z1Z2, Z2Z3: 00, 10, 11, 01"},
      {"recovery_trace_preserving", "sum_a R_a^dag R_a = 1 for R_a = E_a sum_i |v_a^i><v_a^i|"},
      {"recovery_times_error_is_scalar_on_code", "R_a E_a restricted to the code has |lambda| = 1"},
      {"recovery_undoes_single_errors", "R o E_a is the identity on code states"},
      {"recovery_idempotent", "R o R = R"},
      {"iso_q_*", "|v_a^i> -> |i> (x) |a>: errors act on the syndrome factor only"},
      {"frame.*", "Z_q = sum_a E_a Z_C E_a, X_q = sum_a E_a X_C E_a"},
      {"frame_commutes_with_stabilizers", "encoded observables commute with Z1Z2 and Z2Z3"},
      {"iso_qprime_*", "|b1 b2 b3> -> |b1> (x) |b1+b2, b2+b3>: E_1 flips the qubit factor"},
      {"invariance.*", "expectations of X_q, Y_q, Z_q are unchanged by every E_b R_a word"},
  };
  return table;
}

const DescribeTable& collective_table() {
  static const DescribeTable table{
      {"spin_algebra", "S_alpha = sum_i sigma_alpha^(i) / 2 satisfy [S_x, S_y] = i S_z"},
      {"casimir_spectrum_3_4_and_15_4", "C^8 = (spin 1/2) (x) C^2 (+) (spin 3/2): S^2 = 3/4 (x4), 15/4 (x4)"},
      {"invariant_states_*", "no rotation-invariant three-spin state; one for two spins, two for four"},
      {"omega.basis_*", "basis (|001> + w|010> + w^2|100>)/sqrt3 and relatives, w = exp(2 pi i / 3)"},
      {"singlet_triplet.basis_*", "basis (|01> - |10>)|0>/sqrt2, (2|001> - |010> - |100>)/sqrt6 and flips"},
      {"scalars_commute_with_collective_spin", "s_ij = X_i X_j + Y_i Y_j + Z_i Z_j commute with S_alpha"},
      {"protected_projector_*", "P_q = 1/2 - (s12 + s23 + s31)/6 has trace 4"},
      {"omega.frame.*", "X_q = E12 P_q, Y_q = -sqrt3 (s23 - s31) P_q / 6, Z_q = [X, Y] / 2i"},
      {"singlet_triplet.frame.*", "X_q = sqrt3 (s23 - s31) P_q / 6, Z_q = -E12 P_q, Y_q = [Z, X] / 2i"},
      {"*.frame_algebra_dim_4", "products of X_q, Y_q, Z_q span M_2 on the support"},
      {"omega.z_is_scaled_tau", "Z_q = (sqrt3 / 6) sum eps_abc sigma_a sigma_b sigma_c"},
      {"flavors_related_by_qubit_unitary", "the two bases differ by a unitary on the qubit factor"},
      {"commutant_dim_5", "commutant of {S_alpha}: M_2 (+) C, dimension 5"},
      {"isotypic_blocks_1x4_2x2", "isotypic blocks (m, d) = (1, 4), (2, 2)"},
      {"exchange_sectors_*", "s_z = +1/2 and s_z = -1/2 halves each carry a frame built from exchange"},
      {"*purity*", "qubit factor stays pure for any gauge state"},
      {"initialization_z_plus_one", "singlet of spins 1, 2 with spin 3 up prepares Z = +1"},
      {"singlet_triplet_readout_measures_z", "singlet probability of spins 1, 2 equals (1 + <Z>)/2"},
      {"invariance.*", "S_alpha = 1 (x) sigma_alpha in the protected basis; expectations invariant"},
  };
  return table;
}

const DescribeTable& algebra_table() {
  static const DescribeTable table{
      {"pauli_frame.*", "X, Y, Z on C^2: [X, Y] = 2iZ, {X, Y} = 0, X^2 = 1 and cyclic"},
      {"half_y_fails_anticommutation", "a frame with Y -> Y/2 violates {A, B} = 2 delta_AB P"},
      {"pauli_commutant_is_scalars", "commutant of the Pauli algebra is C 1"},
      {"pauli_algebra_is_full_matrix_algebra", "words in X, Y, Z span M_2"},
      {"degenerate_diagonal_commutant_dim_5", "commutant of diag(1,1,2) is M_2 (+) C"},
      {"identity_in_commutant", "1 lies in every commutant"},
      {"*_bicommutant_equals_word_span", "A'' = A for the generated noise algebras"},
      {"repetition_*", "noise-plus-recovery algebra is 1 (x) M_4 on C^2 (x) C^4"},
      {"pauli_z_on_up_is_one", "<0|Z|0> = 1"},
  };
  return table;
}

const DescribeTable& table_for(Suite suite) {
  switch (suite) {
  case Suite::bosonic:
    return bosonic_table();
  case Suite::repetition:
    return repetition_table();
  case Suite::collective:
    return collective_table();
  case Suite::algebra:
  case Suite::all:
    break;
  }
  return algebra_table();
}

} // namespace

Suite suite_from_string(const std::string& name) {
  if (name == "bosonic") return Suite::bosonic;
  if (name == "repetition") return Suite::repetition;
  if (name == "collective") return Suite::collective;
  if (name == "algebra") return Suite::algebra;
  if (name == "all") return Suite::all;
  throw UsageError("unknown suite: " + name);
}

std::string to_string(Suite suite) {
  switch (suite) {
  case Suite::bosonic:
    return "bosonic";
  case Suite::repetition:
    return "repetition";
  case Suite::collective:
    return "collective";
  case Suite::algebra:
    return "algebra";
  case Suite::all:
    break;
  }
  return "all";
}

Format format_from_string(const std::string& name) {
  if (name == "text") return Format::text;
  if (name == "json") return Format::json;
  throw UsageError("unknown format: " + name);
}

std::string to_string(Format format) { return format == Format::json ? "json" : "text"; }

void validate(const SuiteConfig& config) {
  if (!(config.tolerance > 0.0)) {
    throw UsageError("--tol must be positive");
  }
  if (needs_sign_gate(config.suite) && config.cutoff < 2) {
    throw UsageError("--cutoff must be at least 2: the nonlinear sign gate acts on two photons");
  }
}

std::uint64_t child_seed(std::uint64_t master, std::string_view suite_name) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  auto mix = [&hash](unsigned char byte) {
    hash ^= byte;
    hash *= 0x100000001b3ULL;
  };
  for (int i = 0; i < 8; ++i) {
    mix(static_cast<unsigned char>(master >> (8 * i)));
  }
  for (char c : suite_name) {
    mix(static_cast<unsigned char>(c));
  }
  return hash;
}

VerificationReport run_suites(const SuiteConfig& config) {
  validate(config);
  const std::vector<Suite> modules = modules_of(config.suite);
  std::vector<std::future<VerificationReport>> pending;
  pending.reserve(modules.size());
  for (Suite module : modules) {
    pending.push_back(std::async(std::launch::async, run_module, module, std::cref(config)));
  }
  VerificationReport combined(to_string(config.suite), config.tolerance, config.seed);
  for (std::size_t i = 0; i < modules.size(); ++i) {
    combined.append(pending[i].get(), to_string(modules[i]) + ".");
  }
  return combined;
}

nlohmann::ordered_json report_json(const SuiteConfig& config, const VerificationReport& report) {
  nlohmann::ordered_json j;
  j["suite"] = to_string(config.suite);
  j["config"] = {{"tolerance", config.tolerance},
                 {"seed", config.seed},
                 {"trials", config.trials},
                 {"cutoff", config.cutoff}};
  j["checks"] = nlohmann::ordered_json::array();
  for (const Check& c : report.checks()) {
    j["checks"].push_back(to_json(c));
  }
  j["all_pass"] = report.all_pass();
  return j;
}

std::string render_json(const SuiteConfig& config, const VerificationReport& report) {
  return report_json(config, report).dump(2) + "\n";
}

std::string render_text(const SuiteConfig& config, const VerificationReport& report) {
  auto module_of = [](const std::string& name) { return name.substr(0, name.find('.')); };
  std::vector<Check> sorted = report.checks();
  std::stable_sort(sorted.begin(), sorted.end(), [&](const Check& a, const Check& b) {
    return std::pair(module_of(a.name), a.name) < std::pair(module_of(b.name), b.name);
  });

  std::size_t width = 0;
  for (const Check& c : sorted) width = std::max(width, c.name.size());

  std::ostringstream os;
  os << "suite " << to_string(config.suite) << "  tol " << format_deviation(config.tolerance)
     << "  seed " << config.seed << "  trials " << config.trials << "  cutoff " << config.cutoff
     << "\n";
  std::size_t failed = 0;
  for (const Check& c : sorted) {
    os << (c.pass ? "PASS  " : "FAIL  ") << std::left << std::setw(static_cast<int>(width))
       << c.name << "  " << format_deviation(c.max_deviation) << "\n";
    failed += c.pass ? 0 : 1;
  }
  os << sorted.size() - failed << "/" << sorted.size() << " checks passed\n";
  return os.str();
}

int run(const SuiteConfig& config, std::ostream& out, std::ostream& err) {
  VerificationReport report("", 1.0);
  try {
    report = run_suites(config);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsageError;
  }
  const std::string body =
      config.format == Format::json ? render_json(config, report) : render_text(config, report);

  if (config.output_path) {
    std::ofstream file(*config.output_path, std::ios::binary | std::ios::trunc);
    if (!file) {
      err << "cannot open " << *config.output_path << " for writing\n";
      return kIoError;
    }
    file << body;
    file.flush();
    if (!file) {
      err << "failed writing " << *config.output_path << "\n";
      return kIoError;
    }
  } else {
    out << body;
    out.flush();
    if (!out) {
      return kIoError;
    }
  }
  return report.all_pass() ? kAllPass : kCheckFailure;
}

std::string describe(const std::string& suite_name) {
  const Suite suite = suite_from_string(suite_name);
  std::ostringstream os;
  for (Suite module : modules_of(suite)) {
    const DescribeTable& table = table_for(module);
    std::size_t width = 0;
    for (const auto& [check, _] : table) width = std::max(width, check.size());
    os << "[" << to_string(module) << "]\n";
    for (const auto& [check, what] : table) {
      os << "  " << std::left << std::setw(static_cast<int>(width)) << check << "  " << what
         << "\n";
    }
  }
  return os.str();
}

} // namespace qframe::workbench
