#include "commands.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "CLI11.hpp"

#include "acceptance.hpp"
#include "freeball/cp_perron.hpp"
#include "freeball/fixed_point.hpp"
#include "freeball/nc_map.hpp"
#include "freeball/structure.hpp"
#include "freeball/varieties.hpp"
#include "map_parser.hpp"
#include "serialize.hpp"

namespace freeball::cli {

namespace {

struct Options {
  // Shared run configuration.
  std::optional<double> tol;
  std::optional<double> rank_tol;
  std::optional<double> fd_step;
  std::string seed;
  std::string format = "json";
  std::string out_file;
  std::string levels;
  int samples = 50;

  // Inputs, registered per subcommand.
  std::string map;
  std::string point;
  std::vector<std::string> points;
  std::string x, y, z;
  std::string a;
  std::vector<std::string> z_values;
  std::string builtin;
  std::string variety;
  std::string method = "auto";
  int level = 1;
  int max_level = 3;
  int count = 8;
  int starts = 20;
  bool fd = false;
  std::vector<int> criteria;

  ToleranceConfig tolerances() const {
    ToleranceConfig t;
    if (tol) t.residual_tol = *tol;
    if (rank_tol) t.rank_tol = *rank_tol;
    if (fd_step) t.fd_step = *fd_step;
    t.validate();
    return t;
  }

  std::uint64_t run_seed() const {
    std::string text = seed;
    if (text.empty()) {
      const char* env = std::getenv("FREEBALL_SEED");
      if (env == nullptr || *env == '\0') return 0;
      text = env;
    }
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(text, &used, 10);
      if (used != text.size() || text.front() == '-') throw std::invalid_argument("trailing");
      return v;
    } catch (const std::exception&) {
      throw Error(ErrorKind::Parse, "seed must be an unsigned 64-bit integer, got '" + text + "'");
    }
  }
};

std::vector<int> parse_levels(const std::string& text, std::vector<int> fallback) {
  if (text.empty()) return fallback;
  std::vector<int> out;
  auto to_int = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(s, &used);
      if (used != s.size() || v < 1) throw std::invalid_argument("level");
      return v;
    } catch (const std::exception&) {
      throw Error(ErrorKind::Parse, "--levels: expected 'a..b' or a comma list of positive integers, got '" + text + "'");
    }
  };
  const std::size_t dots = text.find("..");
  if (dots != std::string::npos) {
    const int lo = to_int(text.substr(0, dots));
    const int hi = to_int(text.substr(dots + 2));
    if (hi < lo) throw Error(ErrorKind::Parse, "--levels: empty range '" + text + "'");
    for (int n = lo; n <= hi; ++n) out.push_back(n);
    return out;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_int(item));
  return out;
}

MatrixTuple load_tuple(const std::string& path) { return tuple_from_json(read_json_file(path)); }

VarietySpec load_variety(const Options& o) {
  if (!o.builtin.empty() && !o.variety.empty()) {
    throw Error(ErrorKind::Parameter, "give either --builtin or --variety, not both");
  }
  if (!o.builtin.empty()) return builtin_variety(o.builtin);
  if (!o.variety.empty()) return variety_from_json(read_json_file(o.variety));
  throw Error(ErrorKind::Parameter, "a variety is required (--builtin NAME or --variety FILE)");
}

ComplexVector to_vector(const std::vector<Complex>& values) {
  ComplexVector v(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) v(static_cast<Eigen::Index>(i)) = values[i];
  return v;
}

Json cmd_eval(const Options& o) { return tuple_to_json(eval_map(parse_map(o.map), load_tuple(o.point))); }

Json cmd_diff(const Options& o) {
  const NcMap f = parse_map(o.map);
  const MatrixTuple x = load_tuple(o.x);
  const MatrixTuple y = o.y.empty() ? x : load_tuple(o.y);
  const TangentTuple z = tangent_from_json(read_json_file(o.z));
  return tangent_to_json(diff_diff(f, x, y, z));
}

Json cmd_derivative(const Options& o) {
  const NcMap f = parse_map(o.map);
  const MatrixTuple x = load_tuple(o.point);
  const ComplexMatrix d = derivative_superop(f, x);
  Json doc{{"rows", d.rows()}, {"cols", d.cols()}, {"matrix", matrix_to_json(d)}};
  if (o.fd) {
    const double h = o.tolerances().fd_step;
    const ComplexMatrix fd = finite_difference_derivative(f, x, h);
    doc["finite_difference"] = Json{{"step", h}, {"relative_error", (d - fd).norm() / std::max(d.norm(), 1e-300)}};
  }
  return doc;
}

Json cmd_perron(const Options& o) {
  PerronMethod method = PerronMethod::Automatic;
  if (o.method == "dense") method = PerronMethod::Dense;
  else if (o.method == "power") method = PerronMethod::PowerIteration;
  return perron_to_json(perron_pair(load_tuple(o.point), o.tolerances(), method));
}

Json cmd_normalize(const Options& o) {
  return normalization_to_json(coisometry_normalizer(load_tuple(o.point), o.tolerances()));
}

Json cmd_generic(const Options& o) {
  const MatrixTuple x = load_tuple(o.point);
  const ToleranceConfig tol = o.tolerances();
  const GenericityResult g = is_generic(x, tol.rank_tol);
  Json doc{{"generic", g.generic}, {"algebra_dim", g.algebra_dim}, {"full_dim", x.n() * x.n()}};
  if (!g.generic) {
    Engine rng = make_engine(o.run_seed(), "cli.generic.witness");
    const auto w = find_invariant_subspace(x, tol.rank_tol, rng);
    doc["invariant_subspace"] = w ? matrix_to_json(*w) : Json(nullptr);
  }
  return doc;
}

Json cmd_relations(const Options& o) {
  const LinearRelations l = linear_relations(load_tuple(o.point), o.tolerances().rank_tol);
  return Json{{"d", l.d}, {"dim", l.dim()}, {"basis", matrix_to_json(l.basis.transpose())}};
}

Json cmd_matspan(const Options& o) {
  std::vector<MatrixTuple> xs;
  for (const std::string& path : o.points) {
    const Json doc = read_json_file(path);
    if (doc.is_array()) {
      for (const Json& item : doc) xs.push_back(tuple_from_json(item));
    } else {
      xs.push_back(tuple_from_json(doc));
    }
  }
  Json doc = subspace_to_json(mat_span(xs, o.tolerances().rank_tol));
  doc["points"] = xs.size();
  return doc;
}

Json cmd_jh(const Options& o) {
  const MatrixTuple x = load_tuple(o.point);
  const JHDecomposition jh = jordan_holder(x, o.tolerances(), o.run_seed());
  return jh_to_json(jh, subdiagonal_residual(x, jh));
}

Json cmd_fix_detect(const Options& o) { return subspace_to_json(fixed_subspace_level1(parse_map(o.map), o.tolerances())); }

Json cmd_fix_verify(const Options& o) {
  const FixedSubspaceReport r = verify_fixed_theorem(parse_map(o.map), parse_levels(o.levels, {1, 2, 3}), o.samples,
                                                     o.run_seed(), o.tolerances(), o.starts);
  return report_to_json(r);
}

Json cmd_fix_find(const Options& o) {
  return search_to_json(search_fixed_points(parse_map(o.map), o.level, o.starts, o.run_seed(), o.tolerances()));
}

Json cmd_qn(const Options& o) {
  const NcMap f = parse_map(o.map);
  const ToleranceConfig tol = o.tolerances();
  const MatSpanSubspace v = fixed_subspace_level1(f, tol);
  const MatrixTuple x = o.point.empty() ? MatrixTuple::zero(f.d_in(), o.level) : load_tuple(o.point);
  Json doc = compression_to_json(normal_compression(f, v, x, tol));
  doc["level"] = x.n();
  return doc;
}

Json cmd_jordan(const Options& o) {
  const JordanCheck j = jordan_multiplicity_check(parse_map(o.map), load_tuple(o.point), o.tolerances());
  return Json{{"ok", j.ok}, {"rank", j.rank}, {"rank_squared", j.rank_squared}};
}

Json cmd_distance(const Options& o) {
  const MatrixTuple x = load_tuple(o.point);
  return Json{{"row_norm", row_norm(x)}, {"distance", caratheodory_distance0(x)}};
}

Json cmd_geodesic(const Options& o) {
  const MatrixTuple x = load_tuple(o.point);
  std::optional<NcMap> f;
  if (!o.map.empty()) f = parse_map(o.map);
  Json points = Json::array();
  Json residuals = Json::array();
  if (o.z_values.empty()) throw Error(ErrorKind::Parameter, "geodesic: give at least one --z value");
  for (const std::string& text : o.z_values) {
    const MatrixTuple p = geodesic_from_origin(x, parse_complex(text));
    if (f) residuals.push_back((eval_map(*f, p) - p).norm());
    points.push_back(tuple_to_json(p));
  }
  Json doc{{"points", std::move(points)}};
  if (f) doc["residuals"] = std::move(residuals);
  return doc;
}

Json cmd_mobius(const Options& o) {
  return tuple_to_json(eval_map(mobius(to_vector(parse_complex_list(o.a))), load_tuple(o.point)));
}

Json cmd_variety_check(const Options& o) {
  const VarietySpec v = load_variety(o);
  const VarietyMembership m = on_variety(v, load_tuple(o.point), o.tolerances().residual_tol);
  return Json{{"on_variety", m.on_variety}, {"max_residual", m.max_residual}};
}

Json cmd_variety_sample(const Options& o) {
  const VarietySpec v = load_variety(o);
  const auto pts = sample_level_n(v, o.level, o.count, o.run_seed(), o.tolerances());
  Json arr = Json::array();
  for (const MatrixTuple& p : pts) arr.push_back(tuple_to_json(p));
  return Json{{"level", o.level}, {"requested", o.count}, {"found", pts.size()}, {"points", std::move(arr)}};
}

Json cmd_variety_report(const Options& o) {
  const VarietySpec v = load_variety(o);
  return variety_report_to_json(theorem41_hypothesis_report(v, o.max_level, o.run_seed(), o.tolerances(), o.count));
}

void emit(const Options& o, const std::string& text, std::ostream& out) {
  if (o.out_file.empty()) {
    out << text;
    return;
  }
  std::ofstream file(o.out_file, std::ios::binary);
  if (!file) throw Error(ErrorKind::Io, "cannot write " + o.out_file);
  file << text;
  if (!file) throw Error(ErrorKind::Io, "write failed for " + o.out_file);
}

std::string render(const Options& o, const Json& doc) {
  return o.format == "text" ? render_text(doc) : doc.dump(2) + "\n";
}

int run_selftest(const Options& o, std::ostream& out) {
  std::ostringstream lines;
  const std::uint64_t seed = o.seed.empty() && std::getenv("FREEBALL_SEED") == nullptr ? 20240611 : o.run_seed();
  const auto results = acceptance::run_all(lines, seed, o.criteria);
  const bool ok = acceptance::all_passed(results);
  if (o.format == "text") {
    emit(o, lines.str() + (ok ? "all acceptance criteria passed\n" : "acceptance FAILED\n"), out);
  } else {
    Json arr = Json::array();
    for (const auto& r : results) {
      arr.push_back(Json{{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    }
    emit(o, Json{{"passed", ok}, {"seed", seed}, {"criteria", std::move(arr)}}.dump(2) + "\n", out);
  }
  return ok ? kExitOk : kExitPrecondition;
}

}  // namespace

int exit_code_for(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Dimension:
    case ErrorKind::Domain:
    case ErrorKind::Precondition:
    case ErrorKind::Parameter:
    case ErrorKind::Degenerate:
    case ErrorKind::Index:
    case ErrorKind::Irreducible:
      return kExitPrecondition;
    case ErrorKind::NotPositive:
    case ErrorKind::Singular:
    case ErrorKind::NumericalFailure:
    case ErrorKind::IncompleteDecomposition:
      return kExitNumerical;
    case ErrorKind::Parse:
    case ErrorKind::Io:
      return kExitParse;
  }
  return kExitNumerical;
}

int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Numerical tools for nc functions on the free matrix ball", "freeball"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--tol", o.tol, "residual tolerance (default 1e-8)");
  app.add_option("--rank-tol", o.rank_tol, "relative rank tolerance (default 1e-9)");
  app.add_option("--fd-step", o.fd_step, "finite-difference step (default 1e-6)");
  app.add_option("--seed", o.seed, "root seed (default $FREEBALL_SEED, else 0)");
  app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--out", o.out_file, "write the document to FILE instead of stdout");

  std::map<std::string, std::function<Json(const Options&)>> actions;
  auto sub = [&](const std::string& name, const std::string& help, std::function<Json(const Options&)> action) {
    actions[name] = std::move(action);
    return app.add_subcommand(name, help);
  };
  auto need_map = [&](CLI::App* c) { c->add_option("--map", o.map, "map specification text")->required(); };
  auto need_point = [&](CLI::App* c) { c->add_option("--point", o.point, "tuple JSON file ('-' for stdin)")->required(); };

  CLI::App* c = sub("eval", "evaluate a map at a point", cmd_eval);
  need_map(c);
  need_point(c);

  c = sub("diff", "difference-differential operator Delta f(X, Y)(Z)", cmd_diff);
  need_map(c);
  c->add_option("--x", o.x, "tuple JSON for X")->required();
  c->add_option("--y", o.y, "tuple JSON for Y (default X)");
  c->add_option("--z", o.z, "direction JSON (n x m blocks)")->required();

  c = sub("derivative", "matrix of Delta f(X, X)", cmd_derivative);
  need_map(c);
  need_point(c);
  c->add_flag("--fd", o.fd, "also compare against central differences");

  c = sub("perron", "Perron eigenpair of Phi_X", cmd_perron);
  need_point(c);
  c->add_option("--method", o.method, "eigen solver")->check(CLI::IsMember({"auto", "dense", "power"}));

  c = sub("normalize-coisometry", "similarity making X a multiple of a coisometry", cmd_normalize);
  need_point(c);

  c = sub("generic", "Burnside irreducibility test", cmd_generic);
  need_point(c);

  c = sub("relations", "linear relations among the coordinates", cmd_relations);
  need_point(c);

  c = sub("matspan", "matrix span of one or more points", cmd_matspan);
  c->add_option("--point", o.points, "tuple JSON files (each a tuple or an array of tuples)")->required();

  c = sub("jh", "Jordan-Holder block triangularization", cmd_jh);
  need_point(c);

  c = sub("fix-detect", "level-1 fixed subspace of a map fixing 0", cmd_fix_detect);
  need_map(c);

  c = sub("fix-verify", "sample and Newton-check Fix(f) = V(n) on several levels", cmd_fix_verify);
  need_map(c);
  c->add_option("--levels", o.levels, "levels, e.g. 1..4 or 1,3 (default 1..3)");
  c->add_option("--samples", o.samples, "on-V and off-V samples per level")->check(CLI::NonNegativeNumber);
  c->add_option("--newton-starts", o.starts, "Newton starts per level")->check(CLI::NonNegativeNumber);

  c = sub("fix-find", "Newton search for fixed points at one level", cmd_fix_find);
  need_map(c);
  c->add_option("--level", o.level, "matrix level n")->check(CLI::PositiveNumber);
  c->add_option("--starts", o.starts, "random starts")->check(CLI::NonNegativeNumber);

  c = sub("qn", "normal determinant q_n at a fixed point of V(n)", cmd_qn);
  need_map(c);
  c->add_option("--level", o.level, "level for the default point 0")->check(CLI::PositiveNumber);
  c->add_option("--point", o.point, "fixed point in V(n) (default 0)");

  c = sub("jordan-check", "rank(D - I) versus rank((D - I)^2) at a fixed point", cmd_jordan);
  need_map(c);
  need_point(c);

  c = sub("distance", "Caratheodory distance from the origin", cmd_distance);
  need_point(c);

  c = sub("geodesic", "points z X / ||X|| of the geodesic through X", cmd_geodesic);
  need_point(c);
  c->add_option("--z", o.z_values, "complex parameters, e.g. 0.5 or 0.3+0.2i")->required();
  c->add_option("--map", o.map, "report ||f(p) - p|| for this map");

  c = sub("mobius", "apply the ball automorphism swapping 0 and a", cmd_mobius);
  c->add_option("--a", o.a, "parameter, e.g. (0.2, 0.1i)")->required();
  need_point(c);

  auto variety_source = [&](CLI::App* v) {
    v->add_option("--builtin", o.builtin, "commutator-half | fermionic-half | q-commutation(q)");
    v->add_option("--variety", o.variety, "variety JSON file");
  };
  c = sub("variety-check", "test membership of a point", cmd_variety_check);
  variety_source(c);
  need_point(c);

  c = sub("variety-sample", "Newton samples of the variety at one level", cmd_variety_sample);
  variety_source(c);
  c->add_option("--level", o.level, "matrix level n")->check(CLI::PositiveNumber);
  c->add_option("--count", o.count, "number of points")->check(CLI::NonNegativeNumber);

  c = sub("variety-report", "scalar points and mat-span growth", cmd_variety_report);
  variety_source(c);
  c->add_option("--max-level", o.max_level, "highest level sampled")->check(CLI::PositiveNumber);
  c->add_option("--samples", o.count, "samples per level")->check(CLI::PositiveNumber);

  CLI::App* selftest = app.add_subcommand("selftest", "run the acceptance suite");
  selftest->add_option("--criteria", o.criteria, "only these criterion numbers");

  std::vector<const char*> argv{"freeball"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error [parse]: " << e.what() << "\n";
    return kExitParse;
  }

  try {
    if (selftest->parsed()) return run_selftest(o, out);
    for (const auto& [name, action] : actions) {
      if (app.got_subcommand(name)) {
        emit(o, render(o, action(o)), out);
        return kExitOk;
      }
    }
    err << "error [parse]: no subcommand\n";
    return kExitParse;
  } catch (const Error& e) {
    err << "error [" << to_string(e.kind()) << "]: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error [internal]: " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace freeball::cli
