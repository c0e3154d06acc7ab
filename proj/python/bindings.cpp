#include "qframe/algebra_tools.hpp"
#include "qframe/bosonic_dualrail.hpp"
#include "qframe/collective_noise.hpp"
#include "qframe/repetition_subsystem.hpp"
#include "qframe/tensor_core.hpp"
#include "qframe/workbench.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace qframe;

namespace {

std::vector<std::pair<std::size_t, std::size_t>> blocks_of(const IsotypicSummary& s) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const auto& b : s.blocks) out.emplace_back(b.multiplicity, b.irrep_dim);
  return out;
}

OperatorAlgebra algebra_from(const std::vector<ComplexMatrix>& generators) {
  return OperatorAlgebra(generators);
}

} // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Encoded-qubit constructions and their numerical verification";

  py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
  py::register_exception<IsotypicSplitError>(m, "IsotypicSplitError", PyExc_RuntimeError);
  py::register_exception<workbench::UsageError>(m, "UsageError", PyExc_ValueError);

  // tensor_core
  m.def("kron", py::overload_cast<const ComplexMatrix&, const ComplexMatrix&>(&kron));
  m.def("commutator", &commutator);
  m.def("anticommutator", &anticommutator);
  m.def("pauli_x", &pauli_x);
  m.def("pauli_y", &pauli_y);
  m.def("pauli_z", &pauli_z);
  m.def("eigh", [](const ComplexMatrix& h) {
    const EigenSystem es = eigh(h);
    return py::make_tuple(RealVector(es.values), ComplexMatrix(es.vectors));
  });
  m.def("evolve", [](const ComplexMatrix& h, double t) { return evolve(h, t); }, py::arg("h"),
        py::arg("t"));
  m.def("partial_trace",
        [](const ComplexMatrix& rho, const std::vector<std::size_t>& dims,
           const std::vector<std::size_t>& keep) {
          return partial_trace(DensityOperator(rho), dims, keep).matrix();
        },
        py::arg("rho"), py::arg("dims"), py::arg("keep"));
  m.def("random_haar_state",
        [](std::size_t dim, std::uint64_t seed) { return random_haar_state(dim, seed).amplitudes(); });
  m.def("random_hermitian", &random_hermitian);

  // algebra_tools
  py::class_<EncodedQubitFrame>(m, "EncodedQubitFrame")
      .def(py::init<>())
      .def(py::init([](std::string label, ComplexMatrix support, ComplexMatrix x, ComplexMatrix y,
                       ComplexMatrix z) {
             return EncodedQubitFrame{std::move(label), std::move(support), std::move(x),
                                      std::move(y), std::move(z)};
           }),
           py::arg("label"), py::arg("support"), py::arg("x"), py::arg("y"), py::arg("z"))
      .def_readwrite("label", &EncodedQubitFrame::label)
      .def_readwrite("support", &EncodedQubitFrame::support)
      .def_readwrite("x", &EncodedQubitFrame::x)
      .def_readwrite("y", &EncodedQubitFrame::y)
      .def_readwrite("z", &EncodedQubitFrame::z)
      .def_property_readonly("ambient_dim", &EncodedQubitFrame::ambient_dim);

  m.def("verify_frame",
        [](const EncodedQubitFrame& f, double tol) { return verify_frame(f, tol).to_json().dump(); },
        py::arg("frame"), py::arg("tol") = kDefaultTolerance,
        "JSON report text; qframe.verify_frame returns it parsed");
  m.def("commutant_basis", [](const std::vector<ComplexMatrix>& gens) {
    return commutant_basis(algebra_from(gens));
  });
  m.def("generated_algebra_dim", [](const std::vector<ComplexMatrix>& gens, std::size_t depth) {
    return generated_algebra_basis(algebra_from(gens), depth).size();
  }, py::arg("generators"), py::arg("max_word_length") = 4);
  m.def("isotypic_decomposition",
        [](const std::vector<ComplexMatrix>& gens, std::uint64_t seed) {
          return blocks_of(isotypic_decomposition(algebra_from(gens), seed));
        },
        py::arg("generators"), py::arg("seed") = 0);
  m.def("expectation", [](const ComplexMatrix& op, const ComplexVector& psi) {
    return expectation(op, PureState(psi));
  });
  m.def("pauli_frame", &pauli_frame);

  // bosonic_dualrail
  auto bos = m.def_submodule("bosonic");
  py::class_<bosonic::FockConfig>(bos, "FockConfig")
      .def(py::init<std::size_t, std::size_t>(), py::arg("num_modes"), py::arg("cutoff"))
      .def_property_readonly("num_modes", &bosonic::FockConfig::num_modes)
      .def_property_readonly("cutoff", &bosonic::FockConfig::cutoff)
      .def_property_readonly("ambient_dim", &bosonic::FockConfig::ambient_dim)
      .def("index_of", &bosonic::FockConfig::index_of)
      .def("occupations_of", &bosonic::FockConfig::occupations_of);
  bos.def("annihilation", &bosonic::annihilation);
  bos.def("number", &bosonic::number);
  bos.def("dual_rail_projector", &bosonic::dual_rail_projector);
  bos.def("dual_rail_frame", &bosonic::dual_rail_frame);
  bos.def("beam_splitter", &bosonic::beam_splitter);
  bos.def("phase_shifter", &bosonic::phase_shifter);
  bos.def("ns_gate", &bosonic::ns_gate);
  bos.def("csign", &bosonic::csign, py::arg("config"), py::arg("q1_modes"), py::arg("q2_modes"),
          py::arg("theta_bs"), py::arg("phi_bs") = 0.0);
  bos.def("restrict_to_logical", &bosonic::restrict_to_logical);
  bos.def("prepare_logical", [](const bosonic::FockConfig& c, const std::vector<int>& bits) {
    return bosonic::prepare_logical(c, bits).amplitudes();
  });
  bos.def("leakage", [](const ComplexVector& psi, const bosonic::FockConfig& c) {
    return bosonic::leakage(PureState(psi), c, bosonic::default_pairs(c));
  });

  // repetition_subsystem
  auto rep = m.def_submodule("repetition");
  rep.def("encode", [](Complex c0, Complex c1) { return repetition::encode(c0, c1).amplitudes(); });
  rep.def("error_operator", &repetition::error_operator);
  rep.def("syndrome_of", &repetition::syndrome_of);
  rep.def("recovery_kraus", [] { return repetition::recovery_channel().kraus; });
  rep.def("frame_from_errors", &repetition::frame_from_errors);
  rep.def("noise_recovery_generators",
          [] { return repetition::noise_recovery_algebra().generators(); });
  rep.def("iso_q", [] { return repetition::subsystem_iso_Q().unitary; });
  rep.def("iso_qprime", [] { return repetition::subsystem_iso_Qprime().unitary; });

  // collective_noise
  auto col = m.def_submodule("collective");
  col.def("total_spin_ops", [](std::size_t n) {
    const auto s = collective::total_spin_ops(n);
    return py::make_tuple(s.sx, s.sy, s.sz, s.s2);
  }, py::arg("n_spins") = 3);
  col.def("joint_kernel_dim", [](std::size_t n) { return collective::joint_kernel(n).dimension; });
  col.def("noiseless_frame", [](const std::string& flavor) {
    return collective::noiseless_frame(collective::flavor_from_string(flavor));
  }, py::arg("flavor") = "omega");
  col.def("protected_basis", [](const std::string& flavor) {
    return collective::protected_basis(collective::flavor_from_string(flavor)).columns;
  }, py::arg("flavor") = "omega");
  col.def("protected_projector", &collective::protected_projector);
  col.def("tau123", &collective::tau123);

  // workbench
  m.def("run_suite_json",
        [](const std::string& suite, double tol, std::uint64_t seed, std::size_t trials,
           std::size_t cutoff) {
          workbench::SuiteConfig config;
          config.suite = workbench::suite_from_string(suite);
          config.tolerance = tol;
          config.seed = seed;
          config.trials = trials;
          config.cutoff = cutoff;
          return workbench::render_json(config, workbench::run_suites(config));
        },
        py::arg("suite") = "all", py::arg("tol") = 1e-9, py::arg("seed") = 0,
        py::arg("trials") = 100, py::arg("cutoff") = 2);
  m.def("describe", &workbench::describe);
}
