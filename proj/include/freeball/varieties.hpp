#pragma once

// Subvarieties of the free ball cut out by free polynomials: membership,
// Newton sampling at a fixed level, scalar (level-1) points, and an
// empirical check of the two classification hypotheses (a scalar point
// exists; the matrix span is eventually full).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "freeball/free_poly.hpp"
#include "freeball/structure.hpp"

namespace freeball {

struct VarietySpec {
  int d = 0;
  std::vector<FreePolynomial> relations;
  std::string name;
  /// Known points of the variety (builtins carry their level-2 fixtures).
  std::vector<MatrixTuple> fixtures;
};

/// Throws Dimension when relations disagree on d or d < 1.
VarietySpec make_variety(int d, std::vector<FreePolynomial> relations, std::string name = {});

/// "commutator-half", "q-commutation(q)" with q != 1, or "fermionic-half".
/// Throws Parameter for unknown names or q = 1.
VarietySpec builtin_variety(const std::string& name);

struct VarietyMembership {
  bool on_variety = false;
  double max_residual = 0.0;  ///< max over relations of ||p(X)||_F
};

VarietyMembership on_variety(const VarietySpec& v, const MatrixTuple& x, double tol);

struct ScalarPoints {
  std::vector<ComplexVector> points;  ///< deduplicated, start order, capped
  bool positive_dimensional = false;
  int local_dimension = 0;  ///< max nullity of the Jacobian over the found points
};

/// Multi-start min-norm Newton on the level-1 system from a 21^d real grid
/// on [-0.9, 0.9]^d, each node with 5 random imaginary perturbations.
ScalarPoints scalar_points(const VarietySpec& v, std::uint64_t seed, const ToleranceConfig& tol = {});

/// Points of V(n) inside the ball. Builtin fixtures of matching level come
/// first. Returns fewer than `count` (possibly none) when the start budget
/// runs out.
std::vector<MatrixTuple> sample_level_n(const VarietySpec& v, int n, int count, std::uint64_t seed,
                                        const ToleranceConfig& tol = {});

struct MatSpanLevel {
  int level = 0;
  int samples = 0;
  int dim = 0;  ///< dim V(1) of the mat-span of the sampled points
  bool full = false;
};

struct VarietyReport {
  ScalarPoints scalar;
  std::vector<MatSpanLevel> matspan_per_level;
  bool hypothesis_ok = false;
};

VarietyReport theorem41_hypothesis_report(const VarietySpec& v, int max_level, std::uint64_t seed,
                                          const ToleranceConfig& tol = {}, int samples_per_level = 8);

}  // namespace freeball
