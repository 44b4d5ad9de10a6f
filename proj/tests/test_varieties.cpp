#include "doctest.h"

#include <cmath>

#include "freeball/varieties.hpp"
#include "test_helpers.hpp"

using namespace freeball;

namespace {

bool contains_point(const std::vector<MatrixTuple>& pts, const MatrixTuple& x) {
  for (const MatrixTuple& p : pts) {
    if (p.n() == x.n() && (p - x).norm() < 1e-12) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("builtin varieties") {
  const auto x = FreePolynomial::variable(2, 0);
  const auto y = FreePolynomial::variable(2, 1);
  const VarietySpec c = builtin_variety("commutator-half");
  REQUIRE(c.relations.size() == 1);
  CHECK(c.relations[0].terms() == (x * y - y * x - y * Complex(0.5)).terms());
  const VarietySpec q = builtin_variety("q-commutation(2)");
  CHECK(q.relations[0].terms() == (x * y - y * x * Complex(2.0)).terms());
  const VarietySpec f = builtin_variety("fermionic-half");
  REQUIRE(f.relations.size() == 3);
  CHECK(f.relations[2].terms() == (x * y + y * x - FreePolynomial::constant(2, 0.5)).terms());
  CHECK(builtin_variety("q-commutation(0.5i)").relations[0].terms() ==
        (x * y - y * x * Complex(0, 0.5)).terms());
  CHECK_THROWS_AS(builtin_variety("q-commutation(1)"), Error);
  CHECK_THROWS_AS(builtin_variety("klein-bottle"), Error);
  CHECK_THROWS_AS(make_variety(2, {FreePolynomial::variable(3, 0)}), Error);
}

TEST_CASE("fixtures lie on their varieties") {
  for (const char* name : {"commutator-half", "q-commutation(2)", "fermionic-half"}) {
    const VarietySpec v = builtin_variety(name);
    REQUIRE(v.fixtures.size() == 1);
    const VarietyMembership m = on_variety(v, v.fixtures[0], 1e-15);
    CHECK(m.on_variety);
    CHECK(m.max_residual <= 1e-15);
  }
  const VarietySpec c = builtin_variety("commutator-half");
  CHECK_FALSE(on_variety(c, builtin_variety("fermionic-half").fixtures[0], 1e-9).on_variety);
}

TEST_CASE("scalar points") {
  const VarietySpec c = builtin_variety("commutator-half");
  const ScalarPoints sc = scalar_points(c, 1);
  CHECK_FALSE(sc.points.empty());
  CHECK(sc.positive_dimensional);
  for (const ComplexVector& p : sc.points) {
    CHECK(std::abs(p(1)) < 1e-8);
    CHECK(p.norm() < 1.0);
  }

  // Level one of XY - qYX = 0 is (1 - q) x y = 0: the two axes.
  const ScalarPoints sq = scalar_points(builtin_variety("q-commutation(2)"), 1);
  bool on_x_axis = false, on_y_axis = false;
  for (const ComplexVector& p : sq.points) {
    CHECK(std::abs(p(0) * p(1)) < 1e-8);
    on_x_axis = on_x_axis || (std::abs(p(1)) < 1e-8 && std::abs(p(0)) > 0.1);
    on_y_axis = on_y_axis || (std::abs(p(0)) < 1e-8 && std::abs(p(1)) > 0.1);
  }
  CHECK(on_x_axis);
  CHECK(on_y_axis);

  CHECK(scalar_points(builtin_variety("fermionic-half"), 1).points.empty());
}

TEST_CASE("level-n sampling includes the fixtures") {
  for (const char* name : {"commutator-half", "q-commutation(2)", "fermionic-half"}) {
    const VarietySpec v = builtin_variety(name);
    const auto pts = sample_level_n(v, 2, 4, 3);
    CHECK(contains_point(pts, v.fixtures[0]));
    for (const MatrixTuple& p : pts) {
      CHECK(on_variety(v, p, 1e-8).on_variety);
      CHECK(in_ball(p));
    }
  }
  const VarietySpec f = builtin_variety("fermionic-half");
  for (const MatrixTuple& p : sample_level_n(f, 2, 6, 4)) CHECK(is_generic(p, 1e-9).generic);
  // The canonical anticommutation relations have no solutions at odd levels (trace argument).
  CHECK(sample_level_n(f, 1, 3, 5).empty());
}

TEST_CASE("hypothesis report") {
  const VarietyReport c = theorem41_hypothesis_report(builtin_variety("commutator-half"), 3, 1);
  CHECK(c.hypothesis_ok);
  REQUIRE(c.matspan_per_level.size() == 3);
  CHECK(c.matspan_per_level[0].dim == 1);
  CHECK(c.matspan_per_level[1].full);

  const VarietyReport q = theorem41_hypothesis_report(builtin_variety("q-commutation(2)"), 2, 1);
  CHECK(q.hypothesis_ok);
  CHECK(q.matspan_per_level[1].full);

  const VarietyReport f = theorem41_hypothesis_report(builtin_variety("fermionic-half"), 2, 1);
  CHECK_FALSE(f.hypothesis_ok);
  CHECK(f.scalar.points.empty());
}
