#pragma once

// Fixed points of nc self-maps of the free ball that fix the origin: the
// level-1 fixed subspace V(1), its lift V(n) = V(1) (x) M_n to every level,
// and a sampling/Newton verifier for the claim Fix(f)(n) = V(n) ∩ ball.

#include <cstdint>
#include <vector>

#include "freeball/nc_map.hpp"
#include "freeball/structure.hpp"

namespace freeball {

/// Thresholds separating "fixed" from "not fixed". Values landing between
/// them are reported as ambiguous rather than classified.
struct FixedPointThresholds {
  double fixed = 1e-9;
  double not_fixed = 1e-4;
  double on_subspace = 1e-7;  ///< Newton point counts as inside V(n) when closer than this
};

/// V(1) = ker(Delta f(0,0) - I) on C^d. Throws Precondition unless f is a
/// self-map with ||f(0)|| <= residual_tol.
MatSpanSubspace fixed_subspace_level1(const NcMap& f, const ToleranceConfig& tol = {});

/// Orthonormal splitting of C^{d n^2} into the tangent space of V(n) and
/// its normal space, in the coordinate-major vectorization.
struct LevelSplit {
  int n = 0;
  MatSpanSubspace v1;
  ComplexMatrix tangent;  ///< (d n^2) x (dim V(1) n^2)
  ComplexMatrix normal;   ///< (d n^2) x ((d - dim V(1)) n^2)

  bool contains(const MatrixTuple& z, double tol) const;
};

LevelSplit lift_subspace(const MatSpanSubspace& v1, int n);

struct FixedPointSearch {
  std::vector<MatrixTuple> points;  ///< converged, deduplicated, start order
  std::vector<double> residuals;
  int starts = 0;
  int abandoned = 0;      ///< singular or non-finite Newton steps, or left the ball
  int not_converged = 0;
};

/// Newton iteration on F(X) = f(X) - X from random interior starts, using
/// derivative_superop - I as the Jacobian (Tikhonov-regularized when
/// singular). Converged points have ||F|| <= thresholds.fixed and lie in
/// the ball; duplicates closer than 1e-6 are dropped.
FixedPointSearch search_fixed_points(const NcMap& f, int n, int starts, std::uint64_t seed,
                                     const ToleranceConfig& tol = {},
                                     const FixedPointThresholds& thresholds = {});

std::vector<MatrixTuple> find_fixed_points(const NcMap& f, int n, int starts, std::uint64_t seed,
                                           const ToleranceConfig& tol = {});

struct LevelStatistics {
  int level = 0;
  int samples_on_v = 0;
  double max_residual_on_v = 0.0;
  int samples_off_v = 0;
  double min_displacement_off_v = 0.0;  ///< +inf when no off-V samples exist
  int newton_starts = 0;
  int newton_converged = 0;
  int newton_abandoned = 0;
  int ambiguous = 0;
};

struct NewtonFinding {
  MatrixTuple point;
  int level = 0;
  double residual = 0.0;
  double distance_to_v = 0.0;
  bool classified_on_v = false;
  bool jordan_ok = false;  ///< rank(D - I) == rank((D - I)^2)
};

struct FixedSubspaceReport {
  MatSpanSubspace v1;
  std::vector<int> levels_checked;
  std::vector<LevelStatistics> per_level;
  std::vector<MatrixTuple> counterexamples;
  std::vector<MatrixTuple> ambiguous;
  std::vector<NewtonFinding> newton_found;
  std::uint64_t seed = 0;
  int samples = 0;
  ToleranceConfig tol;
  FixedPointThresholds thresholds;

  bool passed() const { return counterexamples.empty() && ambiguous.empty(); }
};

/// Samples V(n) ∩ ball and points off V(n) at every requested level, runs
/// the Newton search, and collects every observation contradicting
/// Fix(f)(n) = V(n) ∩ ball.
FixedSubspaceReport verify_fixed_theorem(const NcMap& f, const std::vector<int>& levels, int samples,
                                         std::uint64_t seed, const ToleranceConfig& tol = {},
                                         int newton_starts = 20,
                                         const FixedPointThresholds& thresholds = {});

struct NormalCompression {
  MatrixTuple x;
  ComplexMatrix q_matrix;   ///< compression of df(X) - I to the normal space
  Complex q = 1.0;          ///< det of q_matrix; 1 for an empty normal space
  double tangent_residual = 0.0;  ///< ||(df(X) - I) T||, zero when f fixes V
  bool block_structure_ok = false;
};

/// Throws Precondition unless X lies in V(n) and is fixed by f.
NormalCompression normal_compression(const NcMap& f, const MatSpanSubspace& v1, const MatrixTuple& x,
                                     const ToleranceConfig& tol = {});

struct JordanCheck {
  bool ok = false;
  int rank = 0;          ///< rank(D - I)
  int rank_squared = 0;  ///< rank((D - I)^2)
};

/// Compares geometric and algebraic multiplicity of the eigenvalue 1 of
/// Delta f(X, X). Throws Precondition unless f(X) = X within residual_tol.
JordanCheck jordan_multiplicity_check(const NcMap& f, const MatrixTuple& x,
                                      const ToleranceConfig& tol = {});

/// c(0, X) = arctanh(row_norm(X)). Throws Domain outside the ball.
double caratheodory_distance0(const MatrixTuple& x);

/// z X / row_norm(X). Throws Degenerate for X = 0 and Domain for |z| >= 1.
MatrixTuple geodesic_from_origin(const MatrixTuple& x, Complex z);

/// mobius(a) o f o mobius(a), which fixes 0 when f fixes the scalar point a.
/// Throws Precondition when ||f(a) - a|| > residual_tol at level 1.
NcMap normalize_at_scalar_fixed_point(const NcMap& f, const ComplexVector& a,
                                      const ToleranceConfig& tol = {});

}  // namespace freeball
