#include "freeball/fixed_point.hpp"

#include <cmath>
#include <limits>

#include "freeball/rng.hpp"

namespace freeball {

namespace {

void require_self_map(const NcMap& f) {
  if (f.d_in() != f.d_out()) {
    throw Error(ErrorKind::Precondition, "expected a self-map (d_in = d_out)");
  }
}

void require_fixes_origin(const NcMap& f, const ToleranceConfig& tol) {
  require_self_map(f);
  const double at_zero = eval_map(f, MatrixTuple::zero(f.d_in(), 1)).norm();
  if (at_zero > tol.residual_tol) {
    throw Error(ErrorKind::Precondition,
                "map does not fix the origin (||f(0)|| = " + std::to_string(at_zero) +
                    "); move a scalar fixed point to 0 with normalize_at_scalar_fixed_point");
  }
}

MatrixTuple random_tuple(Engine& rng, int d, int n) {
  std::vector<ComplexMatrix> coords;
  for (int j = 0; j < d; ++j) coords.push_back(random_gaussian(rng, n, n));
  return MatrixTuple(std::move(coords));
}

MatrixTuple with_row_norm(const MatrixTuple& x, double target) {
  const double norm = row_norm(x);
  if (norm == 0.0) return x;
  return x * Complex(target / norm);
}

}  // namespace

MatSpanSubspace fixed_subspace_level1(const NcMap& f, const ToleranceConfig& tol) {
  require_fixes_origin(f, tol);
  const int d = f.d_in();
  const ComplexMatrix derivative = derivative_superop(f, MatrixTuple::zero(d, 1));
  const ComplexMatrix kernel = kernel_basis(derivative - ComplexMatrix::Identity(d, d), tol.rank_tol);
  MatSpanSubspace v = MatSpanSubspace::spanned_by(kernel, tol.rank_tol);
  return v;
}

bool LevelSplit::contains(const MatrixTuple& z, double tol) const {
  if (z.n() != n) throw Error(ErrorKind::Dimension, "LevelSplit::contains: level mismatch");
  return in_mat_span(v1, z, tol);
}

LevelSplit lift_subspace(const MatSpanSubspace& v1, int n) {
  if (n < 1) throw Error(ErrorKind::Parameter, "lift_subspace: n must be >= 1");
  LevelSplit split;
  split.n = n;
  split.v1 = v1;
  const ComplexMatrix id = ComplexMatrix::Identity(n * n, n * n);
  split.tangent = kron(v1.level1_basis, id);
  split.normal = kron(orthogonal_complement(v1.level1_basis, v1.d), id);
  return split;
}

FixedPointSearch search_fixed_points(const NcMap& f, int n, int starts, std::uint64_t seed,
                                     const ToleranceConfig& tol,
                                     const FixedPointThresholds& thresholds) {
  require_self_map(f);
  if (n < 1) throw Error(ErrorKind::Parameter, "find_fixed_points: n must be >= 1");
  const int d = f.d_in();
  const int dim = d * n * n;
  const ComplexMatrix id = ComplexMatrix::Identity(dim, dim);
  FixedPointSearch out;
  out.starts = starts;
  for (int s = 0; s < starts; ++s) {
    Engine rng = make_engine(seed, "find_fixed_points", static_cast<std::uint64_t>(n) * 1000003ULL + s);
    MatrixTuple x = with_row_norm(random_tuple(rng, d, n), uniform(rng, 0.1, 0.8));
    double residual = (eval_map(f, x) - x).norm();
    bool abandoned = false;
    for (int it = 0; it < 60 && residual > thresholds.fixed; ++it) {
      const ComplexVector rhs = -vectorize(eval_map(f, x) - x);
      const ComplexMatrix jac = derivative_superop(f, x) - id;
      ComplexVector step;
      if (numerical_rank(jac, tol.rank_tol) == dim) {
        step = jac.partialPivLu().solve(rhs);
      } else {
        const double mu = 1e-12 * std::max(1.0, jac.squaredNorm());
        const ComplexMatrix normal = jac.adjoint() * jac + mu * id;
        step = normal.ldlt().solve(jac.adjoint() * rhs);
      }
      if (!step.allFinite()) {
        abandoned = true;
        break;
      }
      // Damp steps that would leave the ball.
      bool accepted = false;
      for (int halving = 0; halving < 20; ++halving) {
        const MatrixTuple candidate = x + unvectorize_point(step, d, n);
        if (row_norm(candidate) < 0.999) {
          x = candidate;
          accepted = true;
          break;
        }
        step *= 0.5;
      }
      if (!accepted) {
        abandoned = true;
        break;
      }
      residual = (eval_map(f, x) - x).norm();
    }
    if (abandoned) {
      ++out.abandoned;
      continue;
    }
    if (!(residual <= thresholds.fixed)) {
      ++out.not_converged;
      continue;
    }
    bool duplicate = false;
    for (const auto& p : out.points) {
      if ((p - x).norm() < 1e-6) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) {
      out.points.push_back(x);
      out.residuals.push_back(residual);
    }
  }
  return out;
}

std::vector<MatrixTuple> find_fixed_points(const NcMap& f, int n, int starts, std::uint64_t seed,
                                           const ToleranceConfig& tol) {
  return search_fixed_points(f, n, starts, seed, tol).points;
}

FixedSubspaceReport verify_fixed_theorem(const NcMap& f, const std::vector<int>& levels, int samples,
                                         std::uint64_t seed, const ToleranceConfig& tol,
                                         int newton_starts, const FixedPointThresholds& thresholds) {
  FixedSubspaceReport report;
  report.v1 = fixed_subspace_level1(f, tol);
  report.levels_checked = levels;
  report.seed = seed;
  report.samples = samples;
  report.tol = tol;
  report.thresholds = thresholds;
  const int d = f.d_in();
  const MatSpanSubspace& v = report.v1;

  for (int n : levels) {
    if (n < 1) throw Error(ErrorKind::Parameter, "verify_fixed_theorem: levels must be >= 1");
    LevelStatistics stats;
    stats.level = n;
    stats.min_displacement_off_v = std::numeric_limits<double>::infinity();
    const auto level_index = static_cast<std::uint64_t>(n) * 1000003ULL;

    for (int s = 0; s < samples; ++s) {
      Engine rng = make_engine(seed, "verify.on_v", level_index + s);
      MatrixTuple x = v.project(random_tuple(rng, d, n));
      x = with_row_norm(x, uniform(rng, 0.1, 0.8));
      const double residual = (eval_map(f, x) - x).norm();
      ++stats.samples_on_v;
      stats.max_residual_on_v = std::max(stats.max_residual_on_v, residual);
      if (residual > thresholds.fixed * (1.0 + x.norm())) report.counterexamples.push_back(x);
    }

    if (!v.is_full()) {
      for (int s = 0; s < samples; ++s) {
        Engine rng = make_engine(seed, "verify.off_v", level_index + s);
        const MatrixTuple base = with_row_norm(v.project(random_tuple(rng, d, n)), uniform(rng, 0.1, 0.6));
        const MatrixTuple g = random_tuple(rng, d, n);
        const MatrixTuple normal = with_row_norm(g - v.project(g), uniform(rng, 0.1, 0.3));
        const MatrixTuple x = base + normal;
        const double displacement = (eval_map(f, x) - x).norm();
        ++stats.samples_off_v;
        stats.min_displacement_off_v = std::min(stats.min_displacement_off_v, displacement);
        if (displacement <= thresholds.fixed) {
          report.counterexamples.push_back(x);
        } else if (displacement < thresholds.not_fixed) {
          report.ambiguous.push_back(x);
          ++stats.ambiguous;
        }
      }
    }

    const FixedPointSearch search = search_fixed_points(f, n, newton_starts, seed, tol, thresholds);
    stats.newton_starts = search.starts;
    stats.newton_converged = static_cast<int>(search.points.size());
    stats.newton_abandoned = search.abandoned;
    for (std::size_t i = 0; i < search.points.size(); ++i) {
      const MatrixTuple& x = search.points[i];
      NewtonFinding finding{x, n, search.residuals[i], v.distance(x), false, false};
      finding.classified_on_v = finding.distance_to_v <= thresholds.on_subspace;
      finding.jordan_ok = jordan_multiplicity_check(f, x, tol).ok;
      if (!finding.classified_on_v) report.counterexamples.push_back(x);
      report.newton_found.push_back(std::move(finding));
    }
    report.per_level.push_back(stats);
  }
  return report;
}

NormalCompression normal_compression(const NcMap& f, const MatSpanSubspace& v1, const MatrixTuple& x,
                                     const ToleranceConfig& tol) {
  require_self_map(f);
  if (x.d() != v1.d) throw Error(ErrorKind::Dimension, "normal_compression: d mismatch");
  const double distance = v1.distance(x);
  if (distance > 1e-7 * std::max(1.0, x.norm())) {
    throw Error(ErrorKind::Precondition, "normal_compression: X is not in V(n) (distance " +
                                             std::to_string(distance) + ")");
  }
  const double residual = (eval_map(f, x) - x).norm();
  if (residual > tol.residual_tol) {
    throw Error(ErrorKind::Precondition, "normal_compression: X is not fixed (residual " +
                                             std::to_string(residual) + ")");
  }
  const LevelSplit split = lift_subspace(v1, x.n());
  const ComplexMatrix d_minus_i =
      derivative_superop(f, x) - ComplexMatrix::Identity(split.tangent.rows(), split.tangent.rows());
  NormalCompression out{x, split.normal.adjoint() * d_minus_i * split.normal, 1.0, 0.0, false};
  if (out.q_matrix.size() > 0) out.q = out.q_matrix.determinant();
  out.tangent_residual = split.tangent.cols() > 0 ? (d_minus_i * split.tangent).norm() : 0.0;
  out.block_structure_ok = out.tangent_residual <= tol.residual_tol;
  return out;
}

JordanCheck jordan_multiplicity_check(const NcMap& f, const MatrixTuple& x, const ToleranceConfig& tol) {
  require_self_map(f);
  const double residual = (eval_map(f, x) - x).norm();
  if (residual > tol.residual_tol) {
    throw Error(ErrorKind::Precondition, "jordan_multiplicity_check: X is not fixed (residual " +
                                             std::to_string(residual) + ")");
  }
  const ComplexMatrix d = derivative_superop(f, x);
  const ComplexMatrix j = d - ComplexMatrix::Identity(d.rows(), d.cols());
  JordanCheck out;
  out.rank = numerical_rank(j, tol.rank_tol);
  out.rank_squared = numerical_rank(j * j, tol.rank_tol);
  out.ok = out.rank == out.rank_squared;
  return out;
}

double caratheodory_distance0(const MatrixTuple& x) {
  const double norm = row_norm(x);
  if (!(norm < 1.0)) {
    throw Error(ErrorKind::Domain, "caratheodory_distance0: row norm " + std::to_string(norm) + " >= 1");
  }
  return std::atanh(norm);
}

MatrixTuple geodesic_from_origin(const MatrixTuple& x, Complex z) {
  const double norm = row_norm(x);
  if (norm == 0.0) throw Error(ErrorKind::Degenerate, "geodesic_from_origin: X = 0");
  if (!(std::abs(z) < 1.0)) throw Error(ErrorKind::Domain, "geodesic_from_origin: |z| must be < 1");
  return x * (z / norm);
}

NcMap normalize_at_scalar_fixed_point(const NcMap& f, const ComplexVector& a, const ToleranceConfig& tol) {
  require_self_map(f);
  if (a.size() != f.d_in()) throw Error(ErrorKind::Dimension, "normalize: parameter length must equal d");
  const MatrixTuple point = MatrixTuple::scalar(a, 1);
  const double residual = (eval_map(f, point) - point).norm();
  if (residual > tol.residual_tol) {
    throw Error(ErrorKind::Precondition, "normalize: a is not fixed by f (residual " +
                                             std::to_string(residual) + ")");
  }
  if (a.norm() == 0.0) return f;
  const NcMap theta = mobius(a);
  return compose(theta, compose(f, theta));
}

}  // namespace freeball
