#include "doctest.h"

#include <cmath>

#include "freeball/free_poly.hpp"
#include "oracles.hpp"
#include "test_helpers.hpp"

using namespace freeball;
using freeball::testing::mat2;
using freeball::testing::random_point;
using freeball::testing::unit;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

MatrixTuple commutator_point() { return MatrixTuple({mat2(0.5, 0, 0, 0), mat2(0, 0.5, 0, 0)}); }
MatrixTuple q2_point() { return MatrixTuple({mat2(0.5, 0, 0, 0.25), mat2(0, 0.5, 0, 0)}); }
MatrixTuple fermionic_point() {
  return MatrixTuple({unit(2, 0, 1) * kInvSqrt2, unit(2, 1, 0) * kInvSqrt2});
}

}  // namespace

TEST_CASE("eval_word") {
  Engine rng = make_engine(1, "test.word");
  const MatrixTuple x = random_point(rng, 2, 3, 0.5);
  CHECK((eval_word(Word{}, x) - ComplexMatrix::Identity(3, 3)).norm() == 0.0);

  const MatrixTuple e({unit(2, 0, 0), unit(2, 0, 1)});
  CHECK((eval_word(Word{{0, 1}}, e) - unit(2, 0, 1)).norm() == 0.0);

  const MatrixTuple q = q2_point();
  CHECK((eval_word(Word{{0, 1}}, q) - 2.0 * eval_word(Word{{1, 0}}, q)).norm() == 0.0);

  CHECK_THROWS_AS(eval_word(Word{{2}}, x), Error);
}

TEST_CASE("the example relations vanish at their points") {
  const auto x = FreePolynomial::variable(2, 0);
  const auto y = FreePolynomial::variable(2, 1);
  const auto commutator = x * y - y * x - y * Complex(0.5);
  CHECK(eval_poly(commutator, commutator_point()).norm() == 0.0);
  CHECK(eval_poly(x * y - y * x * Complex(2.0), q2_point()).norm() == 0.0);
  const MatrixTuple f = fermionic_point();
  CHECK(eval_poly(x * x, f).norm() == 0.0);
  CHECK(eval_poly(y * y, f).norm() < 1e-15);
  CHECK(eval_poly(x * y + y * x - FreePolynomial::constant(2, 0.5), f).norm() < 1e-15);
}

TEST_CASE("parser") {
  const auto p = parse_polynomial("1*x1*x2 - 1*x2*x1 - 0.5*x2", 2);
  const auto x = FreePolynomial::variable(2, 0);
  const auto y = FreePolynomial::variable(2, 1);
  CHECK(p.terms() == (x * y - y * x - y * Complex(0.5)).terms());

  const auto q = parse_polynomial("1*x1*x2 - 2*x2*x1", 2);
  CHECK(q.terms() == (x * y - y * x * Complex(2.0)).terms());

  const auto c = parse_polynomial("x2*(0.5 + 0.5*x1) + 2i - i", 2);
  CHECK(c.terms().at(Word{}) == Complex(0, 1));
  CHECK(c.terms().at(Word{{1, 0}}) == Complex(0.5));

  CHECK(parse_polynomial("1e-1*x1", 1).terms().at(Word{{0}}) == Complex(0.1));
  CHECK(parse_polynomial("x1 - x1", 1).is_zero());

  auto parse_error = [](const char* text, int d) -> std::string {
    try {
      parse_polynomial(text, d);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Parse);
      return e.what();
    }
    FAIL("expected a parse error for " << text);
    return {};
  };
  CHECK(parse_error("x1^2", 1).find("'^'") != std::string::npos);
  CHECK(parse_error("x3", 2).find("1:2") != std::string::npos);
  CHECK(parse_error("x1 x2", 2).find("1:4") != std::string::npos);
  CHECK(parse_error("x1 +\n (x2", 2).find("2:5") != std::string::npos);
  parse_error("", 1);
  parse_error("2*", 1);
}

TEST_CASE("evaluation is linear, multiplicative and respects direct sums and similarity") {
  Engine rng = make_engine(2, "test.poly.props");
  const auto p = parse_polynomial("0.3 + x1*x2*x1 - 2i*x2*x2 + x1", 2);
  const auto q = parse_polynomial("x2*x1 - 0.25*x1*x1*x1", 2);
  for (int trial = 0; trial < 10; ++trial) {
    const MatrixTuple x = random_point(rng, 2, 1 + trial % 3, 0.8);
    const MatrixTuple y = random_point(rng, 2, 1 + trial % 2, 0.8);
    const Complex a(0.7, -0.2);
    CHECK((eval_poly(p + q * a, x) - eval_poly(p, x) - a * eval_poly(q, x)).norm() < 1e-13);
    CHECK((eval_poly(p * q, x) - eval_poly(p, x) * eval_poly(q, x)).norm() < 1e-13);
    const Word u{{0, 1}}, v{{1, 1, 0}};
    CHECK((eval_word(u + v, x) - eval_word(u, x) * eval_word(v, x)).norm() < 1e-14);

    const ComplexMatrix sum = eval_poly(p, direct_sum(x, y));
    const int n = x.n();
    const int m = y.n();
    CHECK((sum.topLeftCorner(n, n) - eval_poly(p, x)).norm() < 1e-13);
    CHECK((sum.bottomRightCorner(m, m) - eval_poly(p, y)).norm() < 1e-13);
    CHECK(sum.topRightCorner(n, m).norm() == 0.0);

    const ComplexMatrix s = random_well_conditioned(rng, n, 100.0);
    CHECK((eval_poly(p, conjugate(x, s)) - s.inverse() * eval_poly(p, x) * s).norm() <= 1e-9);
  }
}

TEST_CASE("szego kernel: zero points give T exactly") {
  Engine rng = make_engine(3, "test.szego.zero");
  const ComplexMatrix t = random_gaussian(rng, 2, 3);
  const auto k = szego_kernel_truncated(MatrixTuple::zero(2, 2), MatrixTuple::zero(2, 3), t, 10);
  CHECK((k.value - t).norm() == 0.0);
  CHECK(k.tail_bound == 0.0);
}

TEST_CASE("szego kernel: scalar geometric series") {
  const MatrixTuple half({ComplexMatrix::Constant(1, 1, 0.5)});
  const ComplexMatrix one = ComplexMatrix::Constant(1, 1, 1.0);
  const auto k = szego_kernel_truncated(half, half, one, 60);
  CHECK(std::abs(k.value(0, 0) - 4.0 / 3.0) < 1e-15);
}

TEST_CASE("szego kernel: recurrence matches explicit word enumeration") {
  Engine rng = make_engine(4, "test.szego.enum");
  for (int trial = 0; trial < 5; ++trial) {
    const MatrixTuple z = random_point(rng, 2, 2, 0.3);
    const MatrixTuple w = random_point(rng, 2, 3, 0.3);
    const ComplexMatrix t = random_gaussian(rng, 2, 3);
    const int n = 6;
    const auto k = szego_kernel_truncated(z, w, t, n);
    CHECK((k.value - oracle::szego_by_enumeration(z, w, t, n)).norm() < 1e-13);
  }
}

TEST_CASE("szego kernel: truncations converge within the tail bound") {
  Engine rng = make_engine(5, "test.szego.tail");
  for (int trial = 0; trial < 10; ++trial) {
    const MatrixTuple z = random_point(rng, 2, 2, uniform(rng, 0.05, 0.3));
    const MatrixTuple w = random_point(rng, 2, 2, uniform(rng, 0.05, 0.3));
    const ComplexMatrix t = random_gaussian(rng, 2, 2);
    for (int n = 0; n <= 12; ++n) {
      const auto kn = szego_kernel_truncated(z, w, t, n);
      const auto kn5 = szego_kernel_truncated(z, w, t, n + 5);
      CHECK((kn.value - kn5.value).norm() <= kn.tail_bound + 1e-15);
    }
  }
}

TEST_CASE("szego kernel: Hermitian when Z = W and T = T*") {
  Engine rng = make_engine(6, "test.szego.herm");
  const MatrixTuple z = random_point(rng, 3, 3, 0.6);
  ComplexMatrix t = random_gaussian(rng, 3, 3);
  t = (t + t.adjoint()).eval();
  const auto k = szego_kernel_truncated(z, z, t, 12);
  CHECK((k.value - k.value.adjoint()).norm() <= 1e-12);
}

TEST_CASE("szego kernel: errors and unbounded tail") {
  const MatrixTuple outside({ComplexMatrix::Identity(1, 1)});
  const ComplexMatrix one = ComplexMatrix::Constant(1, 1, 1.0);
  CHECK_THROWS_AS(szego_kernel_truncated(outside, outside, one, 3), Error);
  const Complex big[] = {0.7, 0.7};
  const MatrixTuple z = MatrixTuple::scalar(std::span<const Complex>(big), 1) * Complex(0.95);
  const auto k = szego_kernel_truncated(z, z, one, 3);
  CHECK(std::isinf(k.tail_bound));
}

TEST_CASE("to_string output parses back to the same polynomial") {
  Engine rng = make_engine(7, "test.poly.print");
  for (int trial = 0; trial < 30; ++trial) {
    FreePolynomial p(3);
    const int terms = 1 + trial % 5;
    for (int t = 0; t < terms; ++t) {
      Word w;
      const int length = static_cast<int>(uniform(rng, 0.0, 4.0));
      for (int k = 0; k < length; ++k) w.letters.push_back(static_cast<int>(uniform(rng, 0.0, 3.0)));
      const Complex c = t % 2 == 0 ? Complex(uniform(rng, -2, 2)) : Complex(uniform(rng, -2, 2), uniform(rng, -2, 2));
      p.add_term(w, c);
    }
    const FreePolynomial back = parse_polynomial(p.to_string(), 3);
    CHECK(back.terms() == p.terms());
  }
  CHECK(FreePolynomial(2).to_string() == "0");
  CHECK(parse_polynomial("x1*x2 - 2*x2*x1", 2).to_string() == "1*x1*x2 - 2*x2*x1");
}
