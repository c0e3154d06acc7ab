#include "oracles.hpp"
#include "qframe/collective_noise.hpp"

#include <doctest.h>

#include <numbers>

using namespace qframe;
using namespace qframe::collective;

namespace {

ComplexVector ket(std::size_t bits) { return basis_vector(8, bits); }

} // namespace

TEST_CASE("collective spin operators") {
  const CollectiveSpinSystem s = total_spin_ops();
  CHECK(max_abs(ComplexVector(s.sz * ket(0) - 1.5 * ket(0))) == 0.0);
  CHECK(max_abs(commutator(s.sx, s.sy) - kI * s.sz) < 1e-12);
  CHECK(max_abs(commutator(s.sy, s.sz) - kI * s.sx) < 1e-12);
  CHECK(max_abs(commutator(s.sz, s.sx) - kI * s.sy) < 1e-12);

  // Trace moments pin down the Casimir spectrum: 4 x 3/4 and 4 x 15/4.
  CHECK(oracle::trace_power(oracle::from(s.s2), 1) == doctest::Approx(18.0));
  CHECK(oracle::trace_power(oracle::from(s.s2), 2) == doctest::Approx(58.5));
  const EigenSystem es = eigh(s.s2);
  for (Eigen::Index i = 0; i < 8; ++i) {
    CHECK(es.values(i) == doctest::Approx(i < 4 ? 0.75 : 3.75));
  }
  CHECK_THROWS(total_spin_ops(0));
}

TEST_CASE("joint kernel of the collective generators") {
  const JointKernel three = joint_kernel(3);
  const JointKernel two = joint_kernel(2);
  const JointKernel four = joint_kernel(4);
  CHECK(three.dimension == 0);
  CHECK(two.dimension == 1);
  CHECK(four.dimension == 2);
  for (const JointKernel& k : {three, two, four}) {
    CHECK(k.largest_null_value < 1e-8);
    CHECK(k.smallest_nonzero_value > 1e-4);
  }
  // The two-spin kernel is the singlet.
  const CollectiveSpinSystem s2 = total_spin_ops(2);
  ComplexVector singlet = (basis_vector(4, 1) - basis_vector(4, 2)) / std::sqrt(2.0);
  for (const ComplexMatrix* g : s2.generators()) CHECK(max_abs(ComplexVector(*g * singlet)) < 1e-15);
  CHECK(no_invariant_state_check().all_pass());
}

TEST_CASE("protected bases") {
  const ProtectedBasis st = protected_basis(BasisFlavor::singlet_triplet);
  CHECK(max_abs(ComplexVector(st.vector(0, 0) - (ket(0b010) - ket(0b100)) / std::sqrt(2.0))) <
        1e-15);
  CHECK(max_abs(ComplexVector(st.vector(1, 0) -
                              (2.0 * ket(0b001) - ket(0b010) - ket(0b100)) / std::sqrt(6.0))) <
        1e-15);

  const ProtectedBasis om = protected_basis(BasisFlavor::omega);
  const Complex w = std::exp(2.0 * std::numbers::pi / 3.0 * kI);
  CHECK(max_abs(ComplexVector(om.vector(0, 0) -
                              (ket(0b001) + w * ket(0b010) + w * w * ket(0b100)) / std::sqrt(3.0))) <
        1e-15);

  const CollectiveSpinSystem s = total_spin_ops();
  for (const ProtectedBasis* b : {&st, &om}) {
    CHECK(max_abs(ComplexMatrix(b->columns.adjoint() * b->columns) - identity(4)) < 1e-14);
    for (int l : {0, 1}) {
      for (int sz : {0, 1}) {
        const ComplexVector v = b->vector(l, sz);
        CHECK(max_abs(ComplexVector(s.s2 * v - 0.75 * v)) < 1e-14);
        CHECK(max_abs(ComplexVector(s.sz * v - (sz == 0 ? 0.5 : -0.5) * v)) < 1e-14);
      }
    }
  }
  CHECK(flavor_from_string("omega") == BasisFlavor::omega);
  CHECK_THROWS(flavor_from_string("bogus"));
  CHECK_THROWS(st.vector(2, 0));

  const auto j = om.to_json();
  CHECK(j["flavor"] == "omega");
  REQUIRE(j["vectors"].size() == 4);
  CHECK(j["vectors"][0]["amplitudes"].size() == 8);
  CHECK(j["vectors"][0]["amplitudes"][2][1].get<double>() ==
        doctest::Approx(w.imag() / std::sqrt(3.0)));
}

TEST_CASE("rotation scalars") {
  const Scalars sc = scalars();
  const ComplexVector singlet = (ket(0b010) - ket(0b100)) / std::sqrt(2.0);
  CHECK(max_abs(ComplexVector(sc.s12 * singlet + 3.0 * singlet)) < 1e-14);
  CHECK(max_abs(ComplexVector(sc.s12 * ket(0) - ket(0))) < 1e-14);
  const CollectiveSpinSystem s = total_spin_ops();
  for (const ComplexMatrix* m : {&sc.s12, &sc.s23, &sc.s31})
    for (const ComplexMatrix* g : s.generators()) CHECK(max_abs(commutator(*m, *g)) < 1e-12);
}

TEST_CASE("noiseless frames") {
  const ComplexMatrix p = protected_projector();
  CHECK(std::abs(p.trace() - 4.0) < 1e-10);
  CHECK(projector_deviation(p) < 1e-14);
  // Oracle: P_q is the S^2 = 3/4 spectral projector, (15/4 - S^2) / 3.
  const CollectiveSpinSystem s = total_spin_ops();
  CHECK(max_abs(ComplexMatrix(p - (3.75 * identity(8) - s.s2) / 3.0)) < 1e-14);

  for (BasisFlavor flavor : {BasisFlavor::omega, BasisFlavor::singlet_triplet}) {
    const EncodedQubitFrame f = noiseless_frame(flavor);
    CHECK(verify_frame(f).all_pass());
    CHECK(frame_commutes_with(f, s.algebra()).all_pass());
  }

  const EncodedQubitFrame om = noiseless_frame(BasisFlavor::omega);
  CHECK(max_abs(ComplexMatrix(om.z - std::sqrt(3.0) / 6.0 * tau123())) < 1e-12);
  CHECK(max_abs(ComplexMatrix(om.x - swap12() * p)) < 1e-14);
  const ProtectedBasis b = protected_basis(BasisFlavor::omega);
  CHECK(max_abs(ComplexVector(om.x * b.vector(0, 0) - b.vector(1, 0))) < 1e-14);

  const EncodedQubitFrame st = noiseless_frame(BasisFlavor::singlet_triplet);
  CHECK(max_abs(ComplexMatrix(st.z + swap12() * p)) < 1e-14);
  const ProtectedBasis sb = protected_basis(BasisFlavor::singlet_triplet);
  CHECK(expectation(st.z, PureState(sb.vector(0, 0))) == doctest::Approx(1.0));
  CHECK(expectation(st.z, PureState(sb.vector(1, 1))) == doctest::Approx(-1.0));
}

TEST_CASE("block form of the collective generators") {
  for (BasisFlavor flavor : {BasisFlavor::omega, BasisFlavor::singlet_triplet}) {
    const BlockForm bf = collective_block_form(protected_basis(flavor));
    CHECK(bf.block_deviation < 1e-10);
    for (const auto& sigma : bf.sigma) {
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(2.0 * sigma);
      CHECK(svd.singularValues()(0) == doctest::Approx(1.0));
    }
    // sigma(z) is diag(1/2, -1/2) by the s_z labels.
    CHECK(std::abs(bf.sigma[2](0, 0) - 0.5) < 1e-12);
    CHECK(std::abs(bf.sigma[2](1, 1) + 0.5) < 1e-12);
  }
}

TEST_CASE("invariance under collective rotations") {
  const CollectiveSpinSystem s = total_spin_ops();
  const EncodedQubitFrame om = noiseless_frame(BasisFlavor::omega);
  const PureState psi = random_haar_state(8, 3);
  const PureState moved(evolve(s.sz, 1.7) * psi.amplitudes());
  CHECK(expectation(om.x, moved) == doctest::Approx(expectation(om.x, psi)).epsilon(1e-12));
  CHECK(max_abs(ComplexMatrix(evolve(0.0 * s.sx, 1.0) - identity(8))) == 0.0);

  CHECK(noiseless_invariance_suite(0, 1).all_pass());
  CHECK(noiseless_invariance_suite(40, 2).all_pass());
}

TEST_CASE("purity of the protected qubit") {
  ComplexVector zero(2);
  zero << 1.0, 0.0;
  const DensityOperator mixed(identity(2) / 2.0);
  CHECK(purity_of_protected_qubit(zero, mixed) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(purity_of_gauge(zero, mixed) == doctest::Approx(0.5).epsilon(1e-10));

  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const PureState psi = random_haar_state(2, seed);
    const DensityOperator gauge = DensityOperator::from_pure(random_haar_state(2, seed + 10));
    for (BasisFlavor flavor : {BasisFlavor::omega, BasisFlavor::singlet_triplet}) {
      CHECK(purity_of_protected_qubit(psi.amplitudes(), gauge, flavor) ==
            doctest::Approx(1.0).epsilon(1e-10));
      ComplexMatrix g = 0.3 * gauge.matrix() + 0.35 * identity(2);
      const DensityOperator partly(g);
      CHECK(purity_of_gauge(psi.amplitudes(), partly, flavor) ==
            doctest::Approx(partly.purity()).epsilon(1e-10));
    }
  }
  CHECK_THROWS_AS(embed_protected(basis_vector(3, 0), mixed), DimensionError);
}

TEST_CASE("exchange sectors") {
  const auto [plus, minus] = exchange_sector_frames();
  const CollectiveSpinSystem s = total_spin_ops();
  CHECK(std::abs(plus.support.trace() - 2.0) < 1e-12);
  CHECK(std::abs(minus.support.trace() - 2.0) < 1e-12);
  CHECK(verify_frame(plus).all_pass());
  CHECK(verify_frame(minus).all_pass());
  CHECK(max_abs(commutator(plus.x, s.sz)) < 1e-12);
  CHECK(max_abs(commutator(plus.x, s.s2)) < 1e-12);
  CHECK(max_abs(commutator(plus.x, s.sx)) > 0.1);
  CHECK_FALSE(frame_commutes_with(plus, s.algebra()).all_pass());
}

TEST_CASE("the two flavors differ by a qubit-factor unitary") {
  const BasisChange bc = basis_change_between_flavors();
  CHECK(bc.residual < 1e-9);
  CHECK(unitarity_deviation(bc.qubit_unitary) < 1e-10);
}

TEST_CASE("initialization and read-out") {
  const PureState init = prepare_initial_state();
  const EncodedQubitFrame st = noiseless_frame(BasisFlavor::singlet_triplet);
  CHECK(expectation(st.z, init) == doctest::Approx(1.0));
  const auto [singlet, triplet] = singlet_triplet_readout();
  CHECK(expectation(singlet, init) == doctest::Approx(1.0));
  CHECK(projector_deviation(singlet) < 1e-14);
  CHECK(max_abs(ComplexMatrix(singlet + triplet - identity(8))) < 1e-14);
}

TEST_CASE("commutant and isotypic structure of collective noise") {
  const OperatorAlgebra alg = total_spin_ops().algebra();
  CHECK(commutant_basis(alg).size() == 5);
  CHECK(isotypic_decomposition(alg, 4).blocks == std::vector<IsotypicBlock>{{1, 4}, {2, 2}});
}

TEST_CASE("collective suite") {
  CHECK(suite(30, 5, 1e-9).all_pass());
  CHECK(suite(0, 5, 1e-9).all_pass());
}
