#include "freeball/varieties.hpp"

#include <cmath>
#include <numbers>

#include "freeball/nc_map.hpp"
#include "freeball/rng.hpp"

namespace freeball {

VarietySpec make_variety(int d, std::vector<FreePolynomial> relations, std::string name) {
  if (d < 1) throw Error(ErrorKind::Dimension, "variety needs d >= 1");
  for (const auto& p : relations) {
    if (p.d() != d) throw Error(ErrorKind::Dimension, "variety relations disagree on d");
  }
  return VarietySpec{d, std::move(relations), std::move(name), {}};
}

VarietySpec builtin_variety(const std::string& name) {
  const auto x = FreePolynomial::variable(2, 0);
  const auto y = FreePolynomial::variable(2, 1);
  const Complex half(0.5);
  auto m = [](Complex a, Complex b, Complex c, Complex e) {
    ComplexMatrix out(2, 2);
    out << a, b, c, e;
    return out;
  };
  if (name == "commutator-half") {
    VarietySpec v = make_variety(2, {x * y - y * x - y * half}, name);
    v.fixtures.push_back(MatrixTuple({m(0.5, 0, 0, 0), m(0, 0.5, 0, 0)}));
    return v;
  }
  if (name == "fermionic-half") {
    VarietySpec v = make_variety(2, {x * x, y * y, x * y + y * x - FreePolynomial::constant(2, half)}, name);
    const double s = 1.0 / std::numbers::sqrt2;
    v.fixtures.push_back(MatrixTuple({m(0, s, 0, 0), m(0, 0, s, 0)}));
    return v;
  }
  const std::string prefix = "q-commutation(";
  if (name.rfind(prefix, 0) == 0 && name.back() == ')') {
    const std::string q_text = name.substr(prefix.size(), name.size() - prefix.size() - 1);
    const FreePolynomial q_poly = parse_polynomial(q_text, 0);
    if (q_poly.degree() != 0) throw Error(ErrorKind::Parameter, "q-commutation: q must be a number");
    const Complex q = q_poly.is_zero() ? Complex(0.0) : q_poly.terms().begin()->second;
    if (q == Complex(1.0)) throw Error(ErrorKind::Parameter, "q-commutation: q must differ from 1");
    VarietySpec v = make_variety(2, {x * y - y * x * q}, name);
    if (q == Complex(2.0)) v.fixtures.push_back(MatrixTuple({m(0.5, 0, 0, 0.25), m(0, 0.5, 0, 0)}));
    return v;
  }
  throw Error(ErrorKind::Parameter, "unknown builtin variety '" + name +
                                        "' (expected commutator-half, q-commutation(q), fermionic-half)");
}

VarietyMembership on_variety(const VarietySpec& v, const MatrixTuple& x, double tol) {
  if (x.d() != v.d) throw Error(ErrorKind::Dimension, "on_variety: d mismatch");
  VarietyMembership out;
  for (const auto& p : v.relations) out.max_residual = std::max(out.max_residual, eval_poly(p, x).norm());
  out.on_variety = out.max_residual <= tol;
  return out;
}

namespace {

ComplexVector stacked_residual(const VarietySpec& v, const MatrixTuple& x) {
  const Eigen::Index block = static_cast<Eigen::Index>(x.n()) * x.n();
  ComplexVector r(block * static_cast<Eigen::Index>(v.relations.size()));
  for (std::size_t i = 0; i < v.relations.size(); ++i) {
    r.segment(static_cast<Eigen::Index>(i) * block, block) = vec(eval_poly(v.relations[i], x));
  }
  return r;
}

// Polynomials are entire, so the block formula applies at any point; this
// avoids the ball check in derivative_superop while Newton wanders.
ComplexMatrix stacked_jacobian(const NcMap& system, const MatrixTuple& x) {
  const int n = x.n();
  const int d = x.d();
  const int dim = d * n * n;
  ComplexMatrix jac(static_cast<Eigen::Index>(system.d_out()) * n * n, dim);
  for (int c = 0; c < dim; ++c) {
    std::vector<ComplexMatrix> block;
    const int j = c / (n * n);
    const int rem = c % (n * n);
    for (int k = 0; k < d; ++k) {
      ComplexMatrix b = ComplexMatrix::Zero(2 * n, 2 * n);
      b.topLeftCorner(n, n) = x[k];
      b.bottomRightCorner(n, n) = x[k];
      if (k == j) b(rem % n, n + rem / n) = 1.0;
      block.push_back(std::move(b));
    }
    const MatrixTuple image = system.evaluate_unchecked(MatrixTuple(std::move(block)));
    for (int i = 0; i < image.d(); ++i) {
      jac.col(c).segment(static_cast<Eigen::Index>(i) * n * n, n * n) = vec(image[i].topRightCorner(n, n));
    }
  }
  return jac;
}

struct NewtonResult {
  MatrixTuple x;
  double residual = 0.0;
  int nullity = 0;
};

NewtonResult min_norm_newton(const VarietySpec& v, const NcMap& system, MatrixTuple x) {
  const int d = x.d();
  const int n = x.n();
  ComplexVector r = stacked_residual(v, x);
  const double scale = 1e3;
  ComplexMatrix jac;
  for (int it = 0; it < 50; ++it) {
    if (r.norm() <= 1e-14) break;
    jac = stacked_jacobian(system, x);
    Eigen::CompleteOrthogonalDecomposition<ComplexMatrix> cod(jac);
    cod.setThreshold(1e-10);
    const ComplexVector step = cod.solve(-r);
    if (!step.allFinite()) break;
    x = x + unvectorize_point(step, d, n);
    if (x.norm() > scale) break;
    const ComplexVector next = stacked_residual(v, x);
    const bool stalled = next.norm() > 0.999 * r.norm() && it > 10;
    r = next;
    if (stalled) break;
  }
  jac = stacked_jacobian(system, x);
  return {x, r.norm(), d * n * n - numerical_rank(jac, 1e-8)};
}

NcMap relation_system(const VarietySpec& v) {
  if (v.relations.empty()) throw Error(ErrorKind::Parameter, "variety has no relations");
  return NcMap::polynomial(v.relations, "relations");
}

bool near_any(const std::vector<MatrixTuple>& pts, const MatrixTuple& x, double radius) {
  for (const auto& p : pts) {
    if (p.n() == x.n() && (p - x).norm() < radius) return true;
  }
  return false;
}

}  // namespace

ScalarPoints scalar_points(const VarietySpec& v, std::uint64_t seed, const ToleranceConfig& tol) {
  constexpr int kGrid = 21;
  constexpr int kPerturbations = 5;
  constexpr std::size_t kMaxPoints = 200;
  const NcMap system = relation_system(v);
  const int d = v.d;
  ScalarPoints out;
  std::vector<MatrixTuple> found;
  std::vector<int> index(static_cast<std::size_t>(d), 0);
  std::uint64_t node = 0;
  while (true) {
    for (int p = 0; p < kPerturbations; ++p) {
      Engine rng = make_engine(seed, "scalar_points", node * kPerturbations + p);
      ComplexVector z(d);
      for (int j = 0; j < d; ++j) {
        const double re = -0.9 + 1.8 * index[static_cast<std::size_t>(j)] / (kGrid - 1);
        z(j) = Complex(re, uniform(rng, -0.3, 0.3));
      }
      if (z.norm() >= 1.0) continue;
      const NewtonResult res = min_norm_newton(v, system, MatrixTuple::scalar(z, 1));
      if (!(res.residual <= tol.residual_tol) || !(row_norm(res.x) < 1.0)) continue;
      out.local_dimension = std::max(out.local_dimension, res.nullity);
      if (near_any(found, res.x, 1e-6)) continue;
      found.push_back(res.x);
      if (found.size() <= kMaxPoints) {
        ComplexVector point(d);
        for (int j = 0; j < d; ++j) point(j) = res.x[j](0, 0);
        out.points.push_back(point);
      }
    }
    ++node;
    int j = 0;
    while (j < d && ++index[static_cast<std::size_t>(j)] == kGrid) index[static_cast<std::size_t>(j++)] = 0;
    if (j == d) break;
  }
  out.positive_dimensional = out.local_dimension > 0;
  return out;
}

std::vector<MatrixTuple> sample_level_n(const VarietySpec& v, int n, int count, std::uint64_t seed,
                                        const ToleranceConfig& tol) {
  if (n < 1) throw Error(ErrorKind::Parameter, "sample_level_n: n must be >= 1");
  const NcMap system = relation_system(v);
  bool homogeneous = true;
  for (const auto& p : v.relations) homogeneous = homogeneous && p.is_homogeneous();
  std::vector<MatrixTuple> out;
  for (const auto& f : v.fixtures) {
    if (f.n() == n) out.push_back(f);
  }
  const int budget = 50 * std::max(count, 1);
  for (int s = 0; s < budget && static_cast<int>(out.size()) < count; ++s) {
    Engine rng = make_engine(seed, "sample_level_n", static_cast<std::uint64_t>(n) * 1000003ULL + s);
    std::vector<ComplexMatrix> coords;
    for (int j = 0; j < v.d; ++j) coords.push_back(random_gaussian(rng, n, n));
    MatrixTuple start(std::move(coords));
    const double target = uniform(rng, 0.1, 0.9);
    start = start * Complex(target / row_norm(start));
    NewtonResult res = min_norm_newton(v, system, start);
    if (!(res.residual <= tol.residual_tol)) continue;
    MatrixTuple x = res.x;
    const double norm = row_norm(x);
    if (!(norm < 1.0)) {
      if (!homogeneous || norm == 0.0) continue;
      x = x * Complex(target / norm);
    }
    if (!on_variety(v, x, tol.residual_tol).on_variety) continue;
    if (near_any(out, x, 1e-6)) continue;
    out.push_back(x);
  }
  return out;
}

VarietyReport theorem41_hypothesis_report(const VarietySpec& v, int max_level, std::uint64_t seed,
                                          const ToleranceConfig& tol, int samples_per_level) {
  if (max_level < 1) throw Error(ErrorKind::Parameter, "max_level must be >= 1");
  VarietyReport report;
  report.scalar = scalar_points(v, seed, tol);
  bool any_full = false;
  for (int n = 1; n <= max_level; ++n) {
    MatSpanLevel level;
    level.level = n;
    const auto pts = sample_level_n(v, n, samples_per_level, seed, tol);
    level.samples = static_cast<int>(pts.size());
    if (!pts.empty()) {
      const MatSpanSubspace span = mat_span(pts, tol.rank_tol);
      level.dim = span.dim();
      level.full = span.is_full();
    }
    any_full = any_full || level.full;
    report.matspan_per_level.push_back(level);
  }
  report.hypothesis_ok = !report.scalar.points.empty() && any_full;
  return report;
}

}  // namespace freeball
