#include "acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "freeball/cp_perron.hpp"
#include "freeball/fixed_point.hpp"
#include "freeball/free_poly.hpp"
#include "freeball/nc_map.hpp"
#include "freeball/structure.hpp"
#include "freeball/varieties.hpp"
#include "oracles.hpp"

namespace freeball::acceptance {

namespace {

struct Outcome {
  bool passed = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && passed) {
      passed = false;
      detail << "first failure: " << what << "; ";
    }
  }
};

std::string sci(double v) {
  std::ostringstream s;
  s << std::scientific << std::setprecision(2) << v;
  return s.str();
}

ComplexVector vec_of(std::initializer_list<Complex> values) {
  ComplexVector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (Complex c : values) v(i++) = c;
  return v;
}

NcMap scale_map(std::vector<Complex> factors) {
  TestMapSpec spec;
  spec.family = TestMapSpec::Family::Scaling;
  spec.factors = std::move(factors);
  return make_test_map(spec);
}

NcMap nonlinear_map() {
  TestMapSpec spec;
  spec.family = TestMapSpec::Family::Nonlinear;
  return make_test_map(spec);
}

struct Fixture {
  std::string name;
  NcMap map;
};

/// The base fixtures and, for each, mobius(a) o f o mobius(a) moved back to
/// the origin with normalize_at_scalar_fixed_point.
std::vector<Fixture> fixed_point_fixtures() {
  std::vector<Fixture> base = {
      {"scale(1,1/2)", scale_map({1.0, 0.5})},
      {"scale(1,1/3,1/2)", scale_map({1.0, 1.0 / 3.0, 0.5})},
      {"nonlinear", nonlinear_map()},
  };
  std::vector<Fixture> out = base;
  for (const Fixture& f : base) {
    ComplexVector a = ComplexVector::Zero(f.map.d_in());
    a(0) = 0.2;
    const NcMap conjugated = compose(mobius(a), compose(f.map, mobius(a)));
    out.push_back({f.name + " conjugated+normalized", normalize_at_scalar_fixed_point(conjugated, a)});
  }
  return out;
}

ComplexVector random_scalar(Engine& rng, int d, double norm) {
  ComplexVector a(d);
  for (int j = 0; j < d; ++j) a(j) = random_gaussian(rng, 1, 1)(0, 0);
  return a * (norm / a.norm());
}

// 1 and 2 share their inputs.
std::vector<MatrixTuple> perron_inputs(std::uint64_t seed) {
  std::vector<MatrixTuple> points;
  for (int i = 0; i < 200; ++i) {
    Engine rng = make_engine(seed, "acceptance.perron", static_cast<std::uint64_t>(i));
    const int n = 2 + i % 4;
    const int d = 2 + (i / 4) % 2;
    points.push_back(oracle::random_tuple(rng, d, n, uniform(rng, 0.05, 0.9)));
  }
  return points;
}

Outcome criterion_coisometry(std::uint64_t seed) {
  Outcome out;
  const ToleranceConfig tol;
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (const MatrixTuple& x : perron_inputs(seed)) {
    out.require(is_generic(x, tol.rank_tol).generic, "random input not generic");
    const CoisometryNormalization c = coisometry_normalizer(x, tol);
    const double bound = 1e-8 * x.n();
    worst = std::max(worst, c.residual / bound);
    out.require(c.residual <= bound, "residual " + sci(c.residual) + " at n=" + std::to_string(x.n()));
    out.require(c.r > 0.0 && c.r < 1.0, "r = " + sci(c.r) + " outside (0, 1)");
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.require(seconds <= 10.0, "took " + std::to_string(seconds) + " s");
  out.detail << "200 points, worst residual/(1e-8 n) = " << sci(worst);
  return out;
}

Outcome criterion_perron_oracle(std::uint64_t seed) {
  Outcome out;
  double worst = 0.0;
  double min_eig = std::numeric_limits<double>::infinity();
  for (const MatrixTuple& x : perron_inputs(seed)) {
    const PerronData p = perron_pair(x);
    const double reference = oracle::realified_spectral_radius(x);
    const double rel = std::abs(p.r - reference) / reference;
    worst = std::max(worst, rel);
    out.require(rel <= 1e-10, "relative error " + sci(rel));
    const double lowest = hermitian_eigenvalues(p.a).minCoeff();
    min_eig = std::min(min_eig, lowest);
    out.require(lowest > 0.0, "A not positive definite");
  }
  out.detail << "worst relative error " << sci(worst) << ", min eigenvalue of A " << sci(min_eig);
  return out;
}

Outcome criterion_difference_differential(std::uint64_t seed) {
  Outcome out;
  const NcMap square = NcMap::polynomial({parse_polynomial("x1*x1", 1)}, "X^2");
  const NcMap nonlinear = nonlinear_map();
  Engine prng = make_engine(seed, "acceptance.dd.mobius");
  const NcMap mob = mobius(random_scalar(prng, 2, 0.5));
  const std::vector<const NcMap*> maps = {&square, &nonlinear, &mob};
  double worst_fd = 0.0, worst_block = 0.0, worst_linear = 0.0;
  for (std::size_t m = 0; m < maps.size(); ++m) {
    const NcMap& f = *maps[m];
    const int d = f.d_in();
    for (int i = 0; i < 50; ++i) {
      Engine rng = make_engine(seed, "acceptance.dd", m * 1000 + static_cast<std::uint64_t>(i));
      const int n = 1 + i % 3;
      const MatrixTuple x = oracle::random_tuple(rng, d, n, uniform(rng, 0.05, 0.7));
      const ComplexMatrix exact = derivative_superop(f, x);
      const ComplexMatrix fd = finite_difference_derivative(f, x, 1e-6);
      const double rel = (exact - fd).norm() / std::max(exact.norm(), 1e-300);
      worst_fd = std::max(worst_fd, rel);
      out.require(rel <= 1e-5, f.label() + ": derivative vs finite difference " + sci(rel));

      // Lower-left block of f at a block upper triangular point.
      const MatrixTuple y = oracle::random_tuple(rng, d, n, uniform(rng, 0.05, 0.7));
      const MatrixTuple z = oracle::random_tuple(rng, d, n, 0.1);
      std::vector<ComplexMatrix> block;
      for (int j = 0; j < d; ++j) {
        ComplexMatrix b = ComplexMatrix::Zero(2 * n, 2 * n);
        b.topLeftCorner(n, n) = x[j];
        b.topRightCorner(n, n) = z[j];
        b.bottomRightCorner(n, n) = y[j];
        block.push_back(b);
      }
      const MatrixTuple value = eval_map(f, MatrixTuple(std::move(block)));
      for (int j = 0; j < f.d_out(); ++j) {
        const double lower = value[j].bottomLeftCorner(n, n).norm();
        worst_block = std::max(worst_block, lower);
        out.require(lower <= 1e-12, "lower-left block " + sci(lower));
      }

      const TangentTuple z1(oracle::random_tuple(rng, d, n, 1.0));
      const TangentTuple z2(oracle::random_tuple(rng, d, n, 1.0));
      const Complex a(uniform(rng, -1, 1), uniform(rng, -1, 1));
      const Complex b(uniform(rng, -1, 1), uniform(rng, -1, 1));
      std::vector<ComplexMatrix> combo;
      for (int j = 0; j < d; ++j) combo.push_back(a * z1[j] + b * z2[j]);
      const TangentTuple lhs = diff_diff(f, x, y, TangentTuple(std::move(combo)));
      const TangentTuple d1 = diff_diff(f, x, y, z1);
      const TangentTuple d2 = diff_diff(f, x, y, z2);
      double err = 0.0, scale = 0.0;
      for (int j = 0; j < f.d_out(); ++j) {
        err += (lhs[j] - a * d1[j] - b * d2[j]).squaredNorm();
        scale += lhs[j].squaredNorm();
      }
      const double lin = std::sqrt(err) / std::max(1.0, std::sqrt(scale));
      worst_linear = std::max(worst_linear, lin);
      out.require(lin <= 1e-10, "linearity defect " + sci(lin));
    }
  }
  out.detail << "150 points; fd " << sci(worst_fd) << ", lower-left " << sci(worst_block) << ", linearity "
             << sci(worst_linear);
  return out;
}

Outcome criterion_ampliation(std::uint64_t seed) {
  Outcome out;
  std::vector<NcMap> maps;
  maps.push_back(NcMap::polynomial({parse_polynomial("x1*x2 + 0.5*x2*x1*x1", 2),
                                    parse_polynomial("0.25*x1 - x2*x2 + 0.1", 2)},
                                   "poly"));
  maps.push_back(NcMap::scaling({1.0, Complex(0.0, 0.5)}));
  Engine prng = make_engine(seed, "acceptance.ampliation.mobius");
  maps.push_back(mobius(random_scalar(prng, 2, 0.4)));
  maps.push_back(compose(maps[2], compose(nonlinear_map(), maps[2])));
  double worst = 0.0;
  for (std::size_t m = 0; m < maps.size(); ++m) {
    const NcMap& f = maps[m];
    for (int i = 0; i < 20; ++i) {
      Engine rng = make_engine(seed, "acceptance.ampliation", m * 1000 + static_cast<std::uint64_t>(i));
      const ComplexVector alpha = random_scalar(rng, f.d_in(), uniform(rng, 0.05, 0.6));
      const ComplexMatrix d1 = derivative_superop(f, MatrixTuple::scalar(alpha, 1));
      for (int n = 1; n <= 4; ++n) {
        const ComplexMatrix dn = derivative_superop(f, MatrixTuple::scalar(alpha, n));
        const ComplexMatrix expected = kron(d1, ComplexMatrix::Identity(n * n, n * n));
        const double err = (dn - expected).cwiseAbs().maxCoeff();
        worst = std::max(worst, err);
        out.require(err <= 1e-12, to_string(f.kind()) + std::string(" map, n=") + std::to_string(n) +
                                      ": entrywise error " + sci(err));
      }
    }
  }
  out.detail << "4 map kinds x 20 alpha x n<=4; worst entrywise error " << sci(worst);
  return out;
}

struct FixedPointRun {
  std::vector<FixedSubspaceReport> reports;
  std::vector<std::string> names;
};

FixedPointRun run_fixed_point_verification(std::uint64_t seed) {
  FixedPointRun run;
  int index = 0;
  for (const Fixture& f : fixed_point_fixtures()) {
    run.names.push_back(f.name);
    run.reports.push_back(
        verify_fixed_theorem(f.map, {1, 2, 3, 4}, 100, derive_seed(seed, "acceptance.fix", index++), {}, 20));
  }
  return run;
}

Outcome criterion_fixed_subspace(const FixedPointRun& run) {
  Outcome out;
  double worst_on = 0.0;
  double min_off = std::numeric_limits<double>::infinity();
  int newton = 0;
  for (std::size_t i = 0; i < run.reports.size(); ++i) {
    const FixedSubspaceReport& r = run.reports[i];
    const std::string& name = run.names[i];
    out.require(r.counterexamples.empty(), name + ": " + std::to_string(r.counterexamples.size()) + " counterexamples");
    out.require(r.ambiguous.empty(), name + ": " + std::to_string(r.ambiguous.size()) + " ambiguous points");
    for (const LevelStatistics& s : r.per_level) {
      const std::string where = name + " level " + std::to_string(s.level);
      out.require(s.samples_on_v == 100, where + ": on-V sample count");
      out.require(s.max_residual_on_v <= 1e-9, where + ": on-V residual " + sci(s.max_residual_on_v));
      out.require(s.samples_off_v == 100, where + ": off-V sample count");
      out.require(s.min_displacement_off_v >= 1e-4, where + ": off-V displacement " + sci(s.min_displacement_off_v));
      out.require(s.newton_starts == 20, where + ": Newton start count");
      out.require(s.newton_converged == 20, where + ": " + std::to_string(s.newton_converged) + "/20 Newton starts converged");
      worst_on = std::max(worst_on, s.max_residual_on_v);
      min_off = std::min(min_off, s.min_displacement_off_v);
    }
    for (const NewtonFinding& nf : r.newton_found) {
      out.require(nf.classified_on_v, name + ": Newton point off V(n)");
      ++newton;
    }
  }
  out.detail << run.reports.size() << " maps x levels 1-4; max on-V residual " << sci(worst_on)
             << ", min off-V displacement " << sci(min_off) << ", " << newton << " Newton points on V(n)";
  return out;
}

Outcome criterion_jordan(const FixedPointRun& run) {
  Outcome out;
  int checked = 0;
  for (std::size_t i = 0; i < run.reports.size(); ++i) {
    for (const NewtonFinding& nf : run.reports[i].newton_found) {
      ++checked;
      out.require(nf.jordan_ok, run.names[i] + " level " + std::to_string(nf.level) + ": rank(D-I) != rank((D-I)^2)");
    }
  }
  out.require(checked >= 100, "only " + std::to_string(checked) + " fixed points");
  out.detail << checked << " fixed points checked";
  return out;
}

Outcome criterion_normal_determinant() {
  Outcome out;
  double smallest = std::numeric_limits<double>::infinity();
  for (const Fixture& f : fixed_point_fixtures()) {
    const MatSpanSubspace v = fixed_subspace_level1(f.map);
    for (int n = 1; n <= 4; ++n) {
      const NormalCompression c = normal_compression(f.map, v, MatrixTuple::zero(f.map.d_in(), n));
      smallest = std::min(smallest, std::abs(c.q));
      out.require(std::abs(c.q) >= 1e-10, f.name + " n=" + std::to_string(n) + ": |q_n(0)| = " + sci(std::abs(c.q)));
      out.require(c.block_structure_ok, f.name + ": derivative does not fix V(n)");
      if (f.name == "scale(1,1/2)" && n == 1) {
        out.require(std::abs(c.q - Complex(-0.5)) <= 1e-12, "q_1(0) for scale(1,1/2) is not -1/2");
      }
    }
  }
  out.detail << "smallest |q_n(0)| over fixtures and n<=4: " << sci(smallest);
  return out;
}

Outcome criterion_matspan(std::uint64_t seed) {
  Outcome out;
  double worst = 0.0;
  const double tol = 1e-9;
  for (int i = 0; i < 30; ++i) {
    Engine rng = make_engine(seed, "acceptance.matspan", static_cast<std::uint64_t>(i));
    const int n = 2 + i % 2;
    const int d = 2 + (i / 2) % 2;
    MatrixTuple x = oracle::random_tuple(rng, d, n, 0.5);
    if (i % 3 != 0) {
      // Impose a linear relation: the last coordinate is a combination of the others.
      std::vector<ComplexMatrix> coords(x.coords().begin(), x.coords().end());
      coords.back() = ComplexMatrix::Zero(n, n);
      for (int j = 0; j + 1 < d; ++j) coords.back() += random_gaussian(rng, 1, 1)(0, 0) * coords[j];
      x = MatrixTuple(std::move(coords));
    }
    const MatSpanSubspace v = mat_span({x}, tol);
    const ComplexMatrix lemma = lift_subspace(v, n).tangent;
    const ComplexMatrix brute = oracle::random_operator_span(x, 2 * n * n * n * n, derive_seed(seed, "acceptance.matspan.T", i));
    out.require(lemma.cols() == brute.cols(), "dimension " + std::to_string(lemma.cols()) + " vs " + std::to_string(brute.cols()));
    if (lemma.cols() == brute.cols()) {
      const double angle = max_principal_angle(lemma, brute);
      worst = std::max(worst, angle);
      out.require(angle <= 1e-8, "principal angle " + sci(angle));
    }
  }
  out.detail << "30 points; worst principal angle " << sci(worst);
  return out;
}

Outcome criterion_mobius(std::uint64_t seed) {
  Outcome out;
  double worst_inv = 0.0, worst_ends = 0.0, max_norm = 0.0;
  for (int p = 0; p < 5; ++p) {
    Engine prng = make_engine(seed, "acceptance.mobius.a", static_cast<std::uint64_t>(p));
    const int d = 2 + p % 2;
    const ComplexVector a = random_scalar(prng, d, uniform(prng, 0.05, 0.9));
    const NcMap theta = mobius(a);
    for (int n = 1; n <= 3; ++n) {
      const MatrixTuple an = MatrixTuple::scalar(a, n);
      const double at_zero = (eval_map(theta, MatrixTuple::zero(d, n)) - an).norm();
      const double at_a = eval_map(theta, an).norm();
      worst_ends = std::max({worst_ends, at_zero, at_a});
      out.require(at_zero <= 1e-12 && at_a <= 1e-12, "Theta(0) = a or Theta(a) = 0 fails");
      for (int i = 0; i < 100; ++i) {
        Engine rng = make_engine(seed, "acceptance.mobius.x", static_cast<std::uint64_t>(p * 100000 + n * 1000 + i));
        const MatrixTuple x = oracle::random_tuple(rng, d, n, uniform(rng, 0.0, 0.95));
        const MatrixTuple y = eval_map(theta, x);
        max_norm = std::max(max_norm, row_norm(y));
        out.require(in_ball(y), "image left the ball");
        const double inv = (eval_map(theta, y) - x).norm();
        worst_inv = std::max(worst_inv, inv);
        out.require(inv <= 1e-9, "involution defect " + sci(inv));
      }
    }
  }
  out.detail << "5 parameters x levels 1-3 x 100 points; involution " << sci(worst_inv) << ", endpoints "
             << sci(worst_ends) << ", max image row norm " << max_norm;
  return out;
}

Outcome criterion_variety_fixtures(std::uint64_t seed) {
  Outcome out;
  const ToleranceConfig tol;
  const VarietySpec commutator = builtin_variety("commutator-half");
  const VarietySpec fermionic = builtin_variety("fermionic-half");
  const VarietySpec q2 = builtin_variety("q-commutation(2)");
  double worst = 0.0;
  for (const VarietySpec* v : {&commutator, &fermionic, &q2}) {
    out.require(!v->fixtures.empty(), v->name + ": no fixture");
    for (const MatrixTuple& x : v->fixtures) {
      const VarietyMembership m = on_variety(*v, x, 1e-12);
      worst = std::max(worst, m.max_residual);
      out.require(m.on_variety, v->name + ": fixture residual " + sci(m.max_residual));
    }
  }
  out.require(is_generic(fermionic.fixtures.at(0), tol.rank_tol).generic, "fermionic point not generic");
  out.require(mat_span({commutator.fixtures.at(0)}, tol.rank_tol).is_full(), "commutator mat-span not full");
  const ScalarPoints fermionic_scalar = scalar_points(fermionic, seed, tol);
  out.require(fermionic_scalar.points.empty(), "fermionic-half has scalar points");
  const VarietyReport rc = theorem41_hypothesis_report(commutator, 3, seed, tol);
  const VarietyReport rq = theorem41_hypothesis_report(q2, 3, seed, tol);
  out.require(rc.hypothesis_ok, "commutator-half hypotheses not confirmed");
  out.require(rq.hypothesis_ok, "q-commutation(2) hypotheses not confirmed");
  out.detail << "max fixture residual " << sci(worst) << ", scalar points: commutator " << rc.scalar.points.size()
             << ", q=2 " << rq.scalar.points.size() << ", fermionic " << fermionic_scalar.points.size();
  return out;
}

Outcome criterion_geodesic(std::uint64_t seed) {
  Outcome out;
  const MatrixTuple half({ComplexMatrix::Constant(1, 1, 0.5)});
  const double c = caratheodory_distance0(half);
  out.require(std::abs(c - 0.5 * std::log(3.0)) <= 1e-12, "caratheodory distance " + sci(c));

  // A point of V(3) for the normalized conjugate of scale(1,1,1/2), moved to a
  // coisometric direction with the similarity from the Perron pair.
  const NcMap base = scale_map({1.0, 1.0, 0.5});
  const ComplexVector a = vec_of({0.2, 0.0, 0.0});
  const NcMap f = normalize_at_scalar_fixed_point(compose(mobius(a), compose(base, mobius(a))), a);
  Engine rng = make_engine(seed, "acceptance.geodesic");
  const MatrixTuple g = oracle::random_tuple(rng, 3, 3, 0.5);
  const MatrixTuple on_v({g[0], g[1], ComplexMatrix::Zero(3, 3)});
  const MatrixTuple x = coisometry_normalizer(on_v).normalized;
  out.require(is_coisometry_direction(x, 1e-10).is_coisometry_direction, "normalized point is not coisometric");
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double radius = uniform(rng, 0.0, 0.95);
    const double phase = uniform(rng, 0.0, 2.0 * std::acos(-1.0));
    const MatrixTuple p = geodesic_from_origin(x, std::polar(radius, phase));
    const double residual = (eval_map(f, p) - p).norm();
    worst = std::max(worst, residual);
    out.require(residual <= 1e-8, "geodesic residual " + sci(residual));
  }
  out.detail << "c(0, 1/2) error " << sci(std::abs(c - 0.5 * std::log(3.0))) << ", worst geodesic residual "
             << sci(worst);
  return out;
}

Outcome criterion_szego(std::uint64_t seed) {
  Outcome out;
  double worst_ratio = 0.0;
  const ComplexMatrix one = ComplexMatrix::Constant(1, 1, 1.0);
  for (int i = 0; i < 20; ++i) {
    Engine rng = make_engine(seed, "acceptance.szego", static_cast<std::uint64_t>(i));
    Complex z = std::polar(uniform(rng, 0.0, 0.9), uniform(rng, 0.0, 6.3));
    Complex w = std::polar(uniform(rng, 0.0, 0.9), uniform(rng, 0.0, 6.3));
    if (i == 0) z = w = 0.9;  // the real positive case, where the tail bound is attained
    const Complex closed = 1.0 / (1.0 - z * std::conj(w));
    const MatrixTuple zt({ComplexMatrix::Constant(1, 1, z)});
    const MatrixTuple wt({ComplexMatrix::Constant(1, 1, w)});
    for (int n = 0; n <= 30; ++n) {
      const SzegoTruncation k = szego_kernel_truncated(zt, wt, one, n);
      const double err = std::abs(k.value(0, 0) - closed);
      // Allow for rounding in the partial sum itself.
      const double slack = 64.0 * std::numeric_limits<double>::epsilon() * std::abs(closed);
      out.require(err <= k.tail_bound + slack, "N=" + std::to_string(n) + ": error " + sci(err) +
                                                    " above tail bound " + sci(k.tail_bound));
      worst_ratio = std::max(worst_ratio, err / (k.tail_bound + slack));
    }
  }
  out.detail << "20 (z, w) pairs, N = 0..30; max error/(tail bound + rounding slack) " << std::setprecision(6) << worst_ratio;
  return out;
}

}  // namespace

std::vector<CriterionResult> run_all(std::ostream& out, std::uint64_t seed, const std::vector<int>& only) {
  auto wanted = [&](int id) { return only.empty() || std::find(only.begin(), only.end(), id) != only.end(); };
  std::vector<CriterionResult> results;
  auto run = [&](int id, const std::string& name, const std::function<Outcome()>& body) {
    if (!wanted(id)) return;
    CriterionResult r;
    r.id = id;
    r.name = name;
    const auto start = std::chrono::steady_clock::now();
    try {
      Outcome o = body();
      r.passed = o.passed;
      r.detail = o.detail.str();
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out << (r.passed ? "PASS" : "FAIL") << "  criterion " << std::setw(2) << id << "  " << name << "  ("
        << std::fixed << std::setprecision(2) << r.seconds << " s)  " << r.detail << std::defaultfloat << "\n";
    out.flush();
    results.push_back(std::move(r));
  };

  run(1, "coisometry normalization", [&] { return criterion_coisometry(seed); });
  run(2, "Perron pair vs dense oracle", [&] { return criterion_perron_oracle(seed); });
  run(3, "difference-differential operator", [&] { return criterion_difference_differential(seed); });
  run(4, "ampliation of the derivative", [&] { return criterion_ampliation(seed); });

  FixedPointRun fixed;
  bool fixed_ready = false;
  auto fixed_run = [&]() -> const FixedPointRun& {
    if (!fixed_ready) {
      fixed = run_fixed_point_verification(seed);
      fixed_ready = true;
    }
    return fixed;
  };
  run(5, "fixed set equals V(n) on the fixtures", [&] { return criterion_fixed_subspace(fixed_run()); });
  run(6, "Jordan multiplicity at fixed points", [&] { return criterion_jordan(fixed_run()); });
  run(7, "normal determinant q_n(0)", [&] { return criterion_normal_determinant(); });
  run(8, "mat-span vs random operator span", [&] { return criterion_matspan(seed); });
  run(9, "Mobius automorphisms", [&] { return criterion_mobius(seed); });
  run(10, "variety fixtures", [&] { return criterion_variety_fixtures(seed); });
  run(11, "Caratheodory distance and geodesics", [&] { return criterion_geodesic(seed); });
  run(12, "Szego kernel truncation", [&] { return criterion_szego(seed); });
  return results;
}

bool all_passed(const std::vector<CriterionResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const CriterionResult& r) { return r.passed; });
}

}  // namespace freeball::acceptance
