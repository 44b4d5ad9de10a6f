#include "doctest.h"

#include "freeball/matrix_core.hpp"
#include "freeball/rng.hpp"

using namespace freeball;

TEST_CASE("hermitian_sqrt of identity and diagonal matrices") {
  const ComplexMatrix i3 = ComplexMatrix::Identity(3, 3);
  CHECK((hermitian_sqrt(i3) - i3).norm() == doctest::Approx(0.0));

  ComplexMatrix diag = ComplexMatrix::Zero(2, 2);
  diag(0, 0) = 4.0;
  diag(1, 1) = 1.0;
  ComplexMatrix expected = ComplexMatrix::Zero(2, 2);
  expected(0, 0) = 2.0;
  expected(1, 1) = 1.0;
  CHECK((hermitian_sqrt(diag) - expected).norm() < 1e-15);
}

TEST_CASE("hermitian_sqrt squares back to random positive definite input") {
  Engine rng = make_engine(11, "test.sqrt");
  for (int n = 1; n <= 6; ++n) {
    const ComplexMatrix g = random_gaussian(rng, n, n);
    const ComplexMatrix a = g * g.adjoint() + 0.1 * ComplexMatrix::Identity(n, n);
    const ComplexMatrix r = hermitian_sqrt(a);
    CHECK((r * r - a).norm() <= 1e-10 * a.norm());
    CHECK((r - r.adjoint()).norm() < 1e-14);
    CHECK(hermitian_eigenvalues(r).minCoeff() > 0.0);
  }
}

TEST_CASE("hermitian_sqrt clamps tiny negative eigenvalues and rejects real ones") {
  ComplexMatrix almost = ComplexMatrix::Zero(2, 2);
  almost(0, 0) = 1.0;
  almost(1, 1) = -1e-12;
  const ComplexMatrix r = hermitian_sqrt(almost);
  CHECK(std::abs(r(1, 1)) == 0.0);

  ComplexMatrix negative = ComplexMatrix::Identity(2, 2);
  negative(1, 1) = -0.5;
  try {
    hermitian_sqrt(negative);
    FAIL("expected not-positive error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotPositive);
  }
  try {
    hermitian_sqrt(ComplexMatrix::Zero(2, 3));
    FAIL("expected dimension error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Dimension);
  }
}

TEST_CASE("numerical_rank basics") {
  CHECK(numerical_rank(ComplexMatrix::Zero(3, 3), 1e-9) == 0);
  CHECK(numerical_rank(ComplexMatrix::Identity(4, 4), 1e-9) == 4);
  Engine rng = make_engine(3, "test.rank");
  const ComplexMatrix u = random_gaussian(rng, 4, 1);
  const ComplexMatrix v = random_gaussian(rng, 4, 1);
  CHECK(numerical_rank(u * v.adjoint(), 1e-9) == 1);
}

TEST_CASE("numerical_rank is invariant under unitary conjugation") {
  Engine rng = make_engine(5, "test.rank.unitary");
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 5;
    const int k = trial % n;
    const ComplexMatrix m = random_gaussian(rng, n, k) * random_gaussian(rng, k, n);
    const ComplexMatrix u = random_unitary(rng, n);
    CHECK(numerical_rank(u.adjoint() * m * u, 1e-9) == numerical_rank(m, 1e-9));
    CHECK(numerical_rank(m, 1e-9) == k);
  }
}

TEST_CASE("kernel_basis basics") {
  CHECK(kernel_basis(ComplexMatrix::Identity(2, 2), 1e-9).cols() == 0);
  const ComplexMatrix k0 = kernel_basis(ComplexMatrix::Zero(2, 2), 1e-9);
  CHECK(k0.cols() == 2);
  CHECK((k0.adjoint() * k0 - ComplexMatrix::Identity(2, 2)).norm() < 1e-14);

  ComplexMatrix diag = ComplexMatrix::Zero(2, 2);
  diag(0, 0) = 1.0;
  const ComplexMatrix k = kernel_basis(diag, 1e-9);
  REQUIRE(k.cols() == 1);
  CHECK(std::abs(k(0, 0)) < 1e-15);
  CHECK(std::abs(std::abs(k(1, 0)) - 1.0) < 1e-15);
}

TEST_CASE("kernel_basis vectors are orthonormal and annihilated") {
  Engine rng = make_engine(7, "test.kernel");
  for (int trial = 0; trial < 25; ++trial) {
    const int rows = 1 + trial % 6;
    const int cols = 2 + trial % 7;
    const int k = std::min(rows, cols) - trial % 2;
    const ComplexMatrix m = random_gaussian(rng, rows, std::max(k, 0)) *
                            random_gaussian(rng, std::max(k, 0), cols);
    const double tol = 1e-9;
    const ComplexMatrix basis = kernel_basis(m, tol);
    CHECK(basis.cols() == cols - numerical_rank(m, tol));
    if (basis.cols() > 0) {
      CHECK((basis.adjoint() * basis - ComplexMatrix::Identity(basis.cols(), basis.cols())).norm() < 1e-12);
      for (Eigen::Index c = 0; c < basis.cols(); ++c) CHECK((m * basis.col(c)).norm() <= tol * std::max(m.norm(), 1e-300));
    }
  }
}

TEST_CASE("principal angle between subspaces") {
  ComplexMatrix e1 = ComplexMatrix::Zero(2, 1);
  e1(0, 0) = 1.0;
  ComplexMatrix tilted(2, 1);
  tilted << std::cos(1e-9), std::sin(1e-9);
  CHECK(max_principal_angle(e1, e1) == 0.0);
  CHECK(max_principal_angle(e1, tilted) == doctest::Approx(1e-9).epsilon(1e-6));
  CHECK(max_principal_angle(e1, ComplexMatrix::Identity(2, 2)) == doctest::Approx(std::acos(-1.0) / 2));
}

TEST_CASE("tolerance validation") {
  ToleranceConfig ok;
  CHECK_NOTHROW(ok.validate());
  ToleranceConfig bad;
  bad.residual_tol = 0.0;
  CHECK_THROWS_AS(bad.validate(), Error);
  ToleranceConfig zero_rank;
  zero_rank.rank_tol = 0.0;
  CHECK_NOTHROW(zero_rank.validate());
}
