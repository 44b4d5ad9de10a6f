#include "doctest.h"

#include <cmath>

#include "freeball/cp_perron.hpp"
#include "oracles.hpp"
#include "test_helpers.hpp"

using namespace freeball;
using freeball::testing::mat2;
using freeball::testing::unit;

TEST_CASE("apply_cp matches the superoperator on vec(T)") {
  Engine rng = make_engine(1, "test.cp.superop");
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 1 + trial % 4;
    const MatrixTuple x = oracle::random_tuple(rng, 1 + trial % 3, n, 0.8);
    const ComplexMatrix t = random_gaussian(rng, n, n);
    const ComplexMatrix phi = apply_cp(x, t);
    const ComplexVector via = superoperator_matrix(x) * vec(t);
    CHECK((unvec(via, n, n) - phi).norm() < 1e-13);
  }
}

TEST_CASE("Phi preserves positivity") {
  Engine rng = make_engine(2, "test.cp.positive");
  const MatrixTuple x = oracle::random_tuple(rng, 3, 4, 0.9);
  const ComplexMatrix g = random_gaussian(rng, 4, 4);
  const ComplexMatrix image = apply_cp(x, g * g.adjoint());
  CHECK(hermitian_eigenvalues(image).minCoeff() >= -1e-14);
}

TEST_CASE("Perron pair of the fermionic point") {
  const double s = 0.5;
  const MatrixTuple x({unit(2, 0, 1) * s, unit(2, 1, 0) * s});
  const PerronData p = perron_pair(x);
  CHECK(p.r == doctest::Approx(0.25).epsilon(1e-12));
  CHECK((p.a - ComplexMatrix::Identity(2, 2)).norm() < 1e-12);
  CHECK(p.relative_gap > 0.5);
}

TEST_CASE("Perron pair at n = 1 is |x|^2 with A = 1") {
  const Complex alpha[] = {0.3, Complex(0, 0.4)};
  const PerronData p = perron_pair(MatrixTuple::scalar(alpha, 1));
  CHECK(p.r == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(std::abs(p.a(0, 0) - 1.0) < 1e-14);
}

TEST_CASE("Perron pair properties on random generic points") {
  Engine rng = make_engine(3, "test.cp.random");
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + trial % 4;
    const MatrixTuple x = oracle::random_tuple(rng, 2 + trial % 2, n, uniform(rng, 0.1, 0.9));
    const PerronData p = perron_pair(x);
    CHECK(p.r > 0.0);
    CHECK(p.r < 1.0);
    CHECK(std::abs(p.r - oracle::realified_spectral_radius(x)) <= 1e-10 * p.r);
    CHECK(std::abs(p.a.trace() - Complex(n)) < 1e-10);
    CHECK((p.a - p.a.adjoint()).norm() < 1e-14);
    CHECK(p.min_eigenvalue > 0.0);
    CHECK((apply_cp(x, p.a) - p.r * p.a).norm() <= 1e-10);
    CHECK((p.s * p.s - p.a).norm() <= 1e-12 * n);
  }
}

TEST_CASE("dense and power-iteration Perron pairs agree") {
  Engine rng = make_engine(4, "test.cp.power");
  for (int trial = 0; trial < 5; ++trial) {
    const MatrixTuple x = oracle::random_tuple(rng, 2, 3 + trial, 0.7);
    const PerronData dense = perron_pair(x, {}, PerronMethod::Dense);
    const PerronData power = perron_pair(x, {}, PerronMethod::PowerIteration);
    CHECK(power.iterative);
    CHECK(std::abs(dense.r - power.r) <= 1e-10 * dense.r);
    CHECK((dense.a - power.a).norm() <= 1e-6 * dense.a.norm());
  }
}

TEST_CASE("Perron pair rejects reducible and outside points") {
  const MatrixTuple upper({mat2(0.5, 0.2, 0, 0.1), mat2(0.1, 0.3, 0, 0.2)});
  try {
    perron_pair(upper);
    FAIL("expected irreducibility error");
  } catch (const IrreducibilityError& e) {
    CHECK(e.kind() == ErrorKind::Irreducible);
    REQUIRE(e.witness().cols() == 1);
    // The witness is the invariant line spanned by e1.
    CHECK(std::abs(std::abs(e.witness()(0, 0)) - 1.0) < 1e-10);
  }
  CHECK_THROWS_AS(perron_pair(MatrixTuple({ComplexMatrix::Identity(2, 2), ComplexMatrix::Zero(2, 2)})), Error);
}

TEST_CASE("coisometry normalizer") {
  Engine rng = make_engine(5, "test.cp.normalizer");
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 4;
    const MatrixTuple x = oracle::random_tuple(rng, 2 + trial % 2, n, uniform(rng, 0.1, 0.9));
    const CoisometryNormalization c = coisometry_normalizer(x);
    CHECK(c.residual <= 1e-8 * n);
    CHECK((c.normalized - conjugate(x, c.s)).norm() <= 1e-12 * std::max(1.0, c.normalized.norm()));
    const ComplexMatrix gram = gram_sum(c.normalized);
    CHECK((gram - c.r * ComplexMatrix::Identity(n, n)).norm() <= 1e-8 * n);
  }
}

TEST_CASE("apply_cp and spectral radius examples") {
  const MatrixTuple quarter({unit(2, 0, 1) * 0.5, unit(2, 1, 0) * 0.5});
  CHECK(apply_cp(MatrixTuple::zero(2, 3), ComplexMatrix::Identity(3, 3)).norm() == 0.0);
  CHECK((apply_cp(quarter, ComplexMatrix::Identity(2, 2)) - 0.25 * ComplexMatrix::Identity(2, 2)).norm() < 1e-16);
  CHECK(superoperator_matrix(MatrixTuple::zero(2, 2)).norm() == 0.0);
  const Complex alpha[] = {0.3, Complex(0, 0.4)};
  CHECK(std::abs(superoperator_matrix(MatrixTuple::scalar(alpha, 1))(0, 0) - 0.25) < 1e-16);
  CHECK_THROWS_AS(apply_cp(quarter, ComplexMatrix::Identity(3, 3)), Error);

  CHECK(spectral_radius(MatrixTuple::zero(2, 2)) == 0.0);
  const MatrixTuple c({ComplexMatrix::Identity(3, 3) * Complex(0.3, 0.4)});
  CHECK(spectral_radius(c) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(spectral_radius(quarter) == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("spectral radius is a similarity invariant") {
  Engine rng = make_engine(6, "test.cp.similar");
  for (int trial = 0; trial < 10; ++trial) {
    const MatrixTuple x = oracle::random_tuple(rng, 2, 3, 0.8);
    const ComplexMatrix s = random_well_conditioned(rng, 3, 1e4);
    CHECK(std::abs(spectral_radius(conjugate(x, s)) - spectral_radius(x)) <= 1e-9);
    CHECK(spectral_radius(x) < 1.0);
  }
}

TEST_CASE("Perron pair on the diagonal algebra is refused") {
  const MatrixTuple diag({unit(2, 0, 0) * 0.5, unit(2, 1, 1) * 0.5});
  CHECK_THROWS_AS(perron_pair(diag), IrreducibilityError);
}

TEST_CASE("normalizing a conjugated coisometry recovers it") {
  Engine rng = make_engine(7, "test.cp.roundtrip");
  // Row norm 0.1*sqrt(2); conjugates with cond <= 5 stay in the ball.
  const MatrixTuple small({unit(2, 0, 1) * 0.1, unit(2, 1, 0) * 0.1});
  for (int trial = 0; trial < 10; ++trial) {
    const MatrixTuple x = conjugate(small, random_well_conditioned(rng, 2, 5.0));
    const CoisometryNormalization c = coisometry_normalizer(x);
    CHECK(c.r == doctest::Approx(0.01).epsilon(1e-10));
    CHECK(is_coisometry_direction(c.normalized * Complex(1.0 / std::sqrt(c.r)), 1e-9).is_coisometry_direction);
  }
  const MatrixTuple quarter({unit(2, 0, 1) * 0.5, unit(2, 1, 0) * 0.5});
  const CoisometryNormalization same = coisometry_normalizer(quarter);
  CHECK((same.s - ComplexMatrix::Identity(2, 2)).norm() < 1e-12);
}
