#include "oracles.hpp"
#include "qframe/tensor_core.hpp"

#include <doctest.h>

#include <numbers>

using namespace qframe;

namespace {

ComplexMatrix diag3(double a, double b, double c) {
  ComplexMatrix m = ComplexMatrix::Zero(3, 3);
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  return m;
}

} // namespace

TEST_CASE("kron basics") {
  CHECK(max_abs(kron(identity(2), identity(2)) - identity(4)) == 0.0);

  const ComplexVector e3 = basis_vector(4, 3);
  CHECK(max_abs(ComplexVector(kron(pauli_z(), pauli_z()) * e3 - e3)) == 0.0);

  const ComplexVector flipped = kron(pauli_x(), identity(2)) * basis_vector(4, 0);
  CHECK(max_abs(ComplexVector(flipped - basis_vector(4, 2))) == 0.0);
}

TEST_CASE("kron matches index-loop oracle and is associative") {
  const ComplexMatrix a = random_hermitian(2, 1);
  const ComplexMatrix b = random_hermitian(3, 2);
  const ComplexMatrix c = random_hermitian(2, 3);
  CHECK(max_abs(oracle::from(kron(a, b)) - oracle::kron_loops(oracle::from(a), oracle::from(b))) ==
        0.0);
  CHECK(max_abs(kron(kron(a, b), c) - kron(a, kron(b, c))) < 1e-12);
  const std::vector<ComplexMatrix> factors{a, b, c};
  CHECK(max_abs(kron(factors) - kron(a, kron(b, c))) < 1e-12);
}

TEST_CASE("commutation relations of the Pauli matrices") {
  CHECK(max_abs(commutator(pauli_x(), pauli_y()) - 2.0 * kI * pauli_z()) == 0.0);
  CHECK(max_abs(anticommutator(pauli_x(), pauli_y())) == 0.0);
  const ComplexMatrix a = random_hermitian(5, 9);
  CHECK(max_abs(commutator(a, a)) == 0.0);
  CHECK_THROWS_AS(commutator(identity(2), identity(3)), DimensionError);
  CHECK_THROWS_AS(anticommutator(identity(2), identity(3)), DimensionError);
}

TEST_CASE("eigh") {
  const EigenSystem z = eigh(pauli_z());
  CHECK(z.values(0) == doctest::Approx(-1.0));
  CHECK(z.values(1) == doctest::Approx(1.0));

  const EigenSystem d = eigh(diag3(3, 1, 2));
  CHECK(d.values(0) == doctest::Approx(1.0));
  CHECK(d.values(1) == doctest::Approx(2.0));
  CHECK(d.values(2) == doctest::Approx(3.0));
  CHECK(std::abs(d.vectors(1, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(d.vectors(2, 1)) == doctest::Approx(1.0));
  CHECK(std::abs(d.vectors(0, 2)) == doctest::Approx(1.0));

  ComplexMatrix bad = pauli_x();
  bad(0, 1) = 2.0;
  CHECK_THROWS_AS(eigh(bad), std::domain_error);
}

TEST_CASE("eigh reconstructs random Hermitian matrices") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const ComplexMatrix h = random_hermitian(1 + seed % 12, seed);
    const EigenSystem es = eigh(h);
    const ComplexMatrix rebuilt = es.vectors * es.values.cast<Complex>().asDiagonal() *
                                  es.vectors.adjoint();
    CHECK(max_abs(rebuilt - h) < 1e-10);
    CHECK(unitarity_deviation(es.vectors) < 1e-10);
    for (Eigen::Index i = 1; i < es.values.size(); ++i) CHECK(es.values(i - 1) <= es.values(i));
  }
}

TEST_CASE("evolve") {
  ComplexMatrix expected = ComplexMatrix::Zero(2, 2);
  expected(0, 0) = -kI;
  expected(1, 1) = kI;
  // exp(-i sigma_z t) reaches diag(-i, i) at t = pi/2 and -1 at t = pi.
  CHECK(max_abs(evolve(pauli_z(), std::numbers::pi / 2) - expected) < 1e-12);
  CHECK(max_abs(evolve(pauli_z(), std::numbers::pi) + identity(2)) < 1e-12);
  CHECK(max_abs(evolve(random_hermitian(4, 3), 0.0) - identity(4)) < 1e-12);

  const ComplexVector moved = evolve(pauli_x(), std::numbers::pi / 2) * basis_vector(2, 0);
  CHECK(max_abs(ComplexVector(moved + kI * basis_vector(2, 1))) < 1e-12);

  CHECK_THROWS_AS(evolve(pauli_x() + kI * pauli_z(), 1.0), std::domain_error);
}

TEST_CASE("evolve agrees with the series oracle and inverts") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const std::size_t dim = 2 + 2 * seed;
    const ComplexMatrix h = random_hermitian(dim, 100 + seed);
    const double t = 0.3 + 0.4 * static_cast<double>(seed);
    const oracle::Mat reference = oracle::expm_series(oracle::from(h) * Complex(0.0, -t));
    CHECK(max_abs(oracle::from(evolve(h, t)) - reference) < 1e-10);
    CHECK(max_abs(evolve(h, t) * evolve(h, -t) - identity(dim)) < 1e-10);
  }
}

TEST_CASE("partial trace") {
  const std::vector<std::size_t> qubits{2, 2};
  const std::vector<std::size_t> first{0};

  const DensityOperator zero_zero(DensityOperator::from_pure(PureState(basis_vector(4, 0))));
  CHECK(max_abs(partial_trace(zero_zero, qubits, first).matrix() -
                DensityOperator::from_pure(PureState(basis_vector(2, 0))).matrix()) < 1e-15);

  const PureState bell((basis_vector(4, 0) + basis_vector(4, 3)) / std::sqrt(2.0));
  CHECK(max_abs(partial_trace(DensityOperator::from_pure(bell), qubits, first).matrix() -
                identity(2) / 2.0) < 1e-15);

  const DensityOperator rq = DensityOperator::from_pure(random_haar_state(2, 4));
  const DensityOperator re(identity(4) / 4.0);
  const std::vector<std::size_t> dims{2, 4};
  CHECK(max_abs(partial_trace(DensityOperator(kron(rq.matrix(), re.matrix())), dims, first)
                    .matrix() -
                rq.matrix()) < 1e-14);

  const std::vector<std::size_t> wrong{3, 2};
  CHECK_THROWS_AS(partial_trace(zero_zero, wrong, first), DimensionError);
}

TEST_CASE("partial trace of random states is a state") {
  const std::vector<std::size_t> dims{2, 3, 2};
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const PureState psi = random_haar_state(12, seed);
    const std::vector<std::size_t> keep{seed % 3, (seed + 1) % 3};
    const DensityOperator reduced =
        partial_trace(DensityOperator::from_pure(psi), dims, std::span(keep).first(1 + seed % 2));
    CHECK(std::abs(reduced.matrix().trace() - 1.0) < 1e-10);
    CHECK(eigh(reduced.matrix()).values(0) >= -1e-10);
  }
}

TEST_CASE("random generators are deterministic and well-formed") {
  CHECK(random_haar_state(4, 7).amplitudes().norm() == doctest::Approx(1.0));
  CHECK(is_hermitian(random_hermitian(8, 7)));
  CHECK(max_abs(ComplexVector(random_haar_state(6, 11).amplitudes() -
                              random_haar_state(6, 11).amplitudes())) == 0.0);
  CHECK(max_abs(random_hermitian(6, 11) - random_hermitian(6, 11)) == 0.0);
  CHECK(max_abs(random_hermitian(6, 11) - random_hermitian(6, 12)) > 0.0);
}

TEST_CASE("state validation") {
  CHECK_THROWS_AS(PureState(basis_vector(3, 0) * 2.0), std::invalid_argument);
  CHECK_THROWS_AS(DensityOperator(identity(2)), std::invalid_argument);
  ComplexMatrix negative = ComplexMatrix::Zero(2, 2);
  negative(0, 0) = 1.5;
  negative(1, 1) = -0.5;
  CHECK_THROWS_AS(DensityOperator{negative}, std::invalid_argument);
  CHECK(DensityOperator(identity(2) / 2.0).purity() == doctest::Approx(0.5));
}
