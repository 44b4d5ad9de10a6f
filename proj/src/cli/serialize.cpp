#include "serialize.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

namespace freeball::cli {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw Error(ErrorKind::Parse, path + ": " + message);
}

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

int int_field(const Json& j, const char* key, const std::string& path) {
  if (!j.contains(key)) fail(path, std::string("missing field \"") + key + "\"");
  const Json& v = j.at(key);
  if (!v.is_number_integer()) fail(path + "." + key, "expected an integer");
  const auto value = v.get<long long>();
  if (value < 1 || value > 1 << 20) fail(path + "." + key, "must be a positive integer");
  return static_cast<int>(value);
}

const Json& coords_field(const Json& j, int d) {
  if (!j.contains("coords")) fail("$", "missing field \"coords\"");
  const Json& c = j.at("coords");
  if (!c.is_array()) fail("$.coords", "expected an array");
  if (static_cast<int>(c.size()) != d) {
    fail("$.coords", "expected " + std::to_string(d) + " coordinates, found " + std::to_string(c.size()));
  }
  return c;
}

std::vector<ComplexMatrix> read_blocks(const Json& coords, int rows, int cols) {
  std::vector<ComplexMatrix> blocks;
  for (std::size_t k = 0; k < coords.size(); ++k) {
    const std::string path = "$.coords[" + std::to_string(k) + "]";
    ComplexMatrix m = matrix_from_json(coords[k], path);
    if (m.rows() != rows || m.cols() != cols) {
      fail(path, "expected a " + std::to_string(rows) + "x" + std::to_string(cols) + " matrix");
    }
    blocks.push_back(std::move(m));
  }
  return blocks;
}

Json tuples_to_json(const std::vector<MatrixTuple>& xs) {
  Json out = Json::array();
  for (const MatrixTuple& x : xs) out.push_back(tuple_to_json(x));
  return out;
}

Json tolerance_to_json(const ToleranceConfig& t) {
  return Json{{"rank_tol", t.rank_tol}, {"residual_tol", t.residual_tol}, {"fd_step", t.fd_step}};
}

void render(std::ostringstream& out, const Json& value, const std::string& prefix) {
  if (value.is_object()) {
    for (auto it = value.begin(); it != value.end(); ++it) {
      render(out, it.value(), prefix.empty() ? it.key() : prefix + "." + it.key());
    }
  } else {
    out << prefix << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
  }
}

}  // namespace

Json complex_to_json(Complex c) { return Json::array({c.real(), c.imag()}); }

Json matrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json vector_to_json(const ComplexVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

Json tuple_to_json(const MatrixTuple& x) {
  Json coords = Json::array();
  for (int j = 0; j < x.d(); ++j) coords.push_back(matrix_to_json(x[j]));
  return Json{{"d", x.d()}, {"n", x.n()}, {"coords", std::move(coords)}};
}

Json tangent_to_json(const TangentTuple& z) {
  Json coords = Json::array();
  for (int j = 0; j < z.d(); ++j) coords.push_back(matrix_to_json(z[j]));
  return Json{{"d", z.d()}, {"rows", z.rows()}, {"cols", z.cols()}, {"coords", std::move(coords)}};
}

Complex complex_from_json(const Json& j, const std::string& path) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    fail(path, "expected a [re, im] pair");
  }
  const Complex c(j[0].get<double>(), j[1].get<double>());
  if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) fail(path, "non-finite entry");
  return c;
}

ComplexMatrix matrix_from_json(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a non-empty array of rows");
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  if (cols == 0) fail(path + "[0]", "expected a non-empty row");
  ComplexMatrix m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < j.size(); ++r) {
    const std::string row_path = path + "[" + std::to_string(r) + "]";
    if (!j[r].is_array() || j[r].size() != cols) {
      fail(row_path, "expected a row of " + std::to_string(cols) + " entries");
    }
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          complex_from_json(j[r][c], row_path + "[" + std::to_string(c) + "]");
    }
  }
  return m;
}

MatrixTuple tuple_from_json(const Json& j) {
  if (!j.is_object()) fail("$", "expected an object with d, n, coords");
  const int d = int_field(j, "d", "$");
  const int n = int_field(j, "n", "$");
  return MatrixTuple(read_blocks(coords_field(j, d), n, n));
}

TangentTuple tangent_from_json(const Json& j) {
  if (!j.is_object()) fail("$", "expected an object with d, rows, cols, coords");
  const int d = int_field(j, "d", "$");
  if (j.contains("n")) {
    const int n = int_field(j, "n", "$");
    return TangentTuple(read_blocks(coords_field(j, d), n, n));
  }
  const int rows = int_field(j, "rows", "$");
  const int cols = int_field(j, "cols", "$");
  return TangentTuple(read_blocks(coords_field(j, d), rows, cols));
}

VarietySpec variety_from_json(const Json& j) {
  if (!j.is_object()) fail("$", "expected an object with d and relations");
  const int d = int_field(j, "d", "$");
  if (!j.contains("relations") || !j.at("relations").is_array()) fail("$.relations", "expected an array of strings");
  std::vector<FreePolynomial> relations;
  const Json& rel = j.at("relations");
  for (std::size_t k = 0; k < rel.size(); ++k) {
    const std::string path = "$.relations[" + std::to_string(k) + "]";
    if (!rel[k].is_string()) fail(path, "expected a polynomial string");
    try {
      relations.push_back(parse_polynomial(rel[k].get<std::string>(), d));
    } catch (const Error& e) {
      fail(path, e.what());
    }
  }
  std::string name;
  if (j.contains("name")) {
    if (!j.at("name").is_string()) fail("$.name", "expected a string");
    name = j.at("name").get<std::string>();
  }
  return make_variety(d, std::move(relations), std::move(name));
}

Json variety_to_json(const VarietySpec& v) {
  Json relations = Json::array();
  for (const FreePolynomial& p : v.relations) relations.push_back(p.to_string());
  Json out{{"d", v.d}, {"relations", std::move(relations)}};
  if (!v.name.empty()) out["name"] = v.name;
  return out;
}

Json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    // Convert the byte offset into a line:column position.
    const std::size_t offset = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    int line = 1, column = 1;
    for (std::size_t i = 0; i < offset; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw Error(ErrorKind::Parse, source + " " + std::to_string(line) + ":" + std::to_string(column) +
                                      ": invalid JSON");
  }
}

Json read_json_file(const std::string& path) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot read " + path);
    text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  return parse_json_text(text, path == "-" ? "<stdin>" : path);
}

Json subspace_to_json(const MatSpanSubspace& v) {
  return Json{{"d", v.d},
              {"dim", v.dim()},
              {"full", v.is_full()},
              {"basis", matrix_to_json(v.level1_basis.transpose())},
              {"relations", matrix_to_json(v.relations.transpose())}};
}

Json perron_to_json(const PerronData& p) {
  return Json{{"r", p.r},
              {"a", matrix_to_json(p.a)},
              {"s", matrix_to_json(p.s)},
              {"residual", p.residual},
              {"min_eigenvalue", p.min_eigenvalue},
              {"relative_gap", p.relative_gap},
              {"near_degenerate", p.near_degenerate},
              {"iterative", p.iterative}};
}

Json normalization_to_json(const CoisometryNormalization& c) {
  return Json{{"r", c.r}, {"residual", c.residual}, {"s", matrix_to_json(c.s)}, {"normalized", tuple_to_json(c.normalized)}};
}

Json jh_to_json(const JHDecomposition& jh, double subdiagonal) {
  Json constituents = tuples_to_json(jh.constituents);
  return Json{{"block_sizes", jh.block_sizes},
              {"subdiagonal_residual", subdiagonal},
              {"similarity", matrix_to_json(jh.similarity)},
              {"constituents", std::move(constituents)}};
}

Json search_to_json(const FixedPointSearch& s) {
  return Json{{"starts", s.starts},
              {"converged", s.points.size()},
              {"abandoned", s.abandoned},
              {"not_converged", s.not_converged},
              {"residuals", s.residuals},
              {"points", tuples_to_json(s.points)}};
}

Json report_to_json(const FixedSubspaceReport& r) {
  Json levels = Json::array();
  for (const LevelStatistics& s : r.per_level) {
    levels.push_back(Json{{"level", s.level},
                          {"samples_on_v", s.samples_on_v},
                          {"max_residual_on_v", s.max_residual_on_v},
                          {"samples_off_v", s.samples_off_v},
                          {"min_displacement_off_v", number(s.min_displacement_off_v)},
                          {"newton_starts", s.newton_starts},
                          {"newton_converged", s.newton_converged},
                          {"newton_abandoned", s.newton_abandoned},
                          {"ambiguous", s.ambiguous}});
  }
  Json newton = Json::array();
  for (const NewtonFinding& f : r.newton_found) {
    newton.push_back(Json{{"level", f.level},
                          {"residual", f.residual},
                          {"distance_to_v", f.distance_to_v},
                          {"classified_on_v", f.classified_on_v},
                          {"jordan_ok", f.jordan_ok},
                          {"point", tuple_to_json(f.point)}});
  }
  return Json{{"passed", r.passed()},
              {"seed", r.seed},
              {"samples", r.samples},
              {"levels", r.levels_checked},
              {"tolerances", tolerance_to_json(r.tol)},
              {"thresholds",
               Json{{"fixed", r.thresholds.fixed},
                    {"not_fixed", r.thresholds.not_fixed},
                    {"on_subspace", r.thresholds.on_subspace}}},
              {"v1", subspace_to_json(r.v1)},
              {"per_level", std::move(levels)},
              {"counterexamples", tuples_to_json(r.counterexamples)},
              {"ambiguous", tuples_to_json(r.ambiguous)},
              {"newton_found", std::move(newton)}};
}

Json compression_to_json(const NormalCompression& c) {
  return Json{{"q", complex_to_json(c.q)},
              {"abs_q", std::abs(c.q)},
              {"tangent_residual", c.tangent_residual},
              {"block_structure_ok", c.block_structure_ok},
              {"normal_dim", c.q_matrix.rows()},
              {"q_matrix", c.q_matrix.size() > 0 ? matrix_to_json(c.q_matrix) : Json::array()}};
}

Json variety_report_to_json(const VarietyReport& r) {
  Json scalar = Json::array();
  for (const ComplexVector& p : r.scalar.points) scalar.push_back(vector_to_json(p));
  Json levels = Json::array();
  for (const MatSpanLevel& l : r.matspan_per_level) {
    levels.push_back(Json{{"level", l.level}, {"samples", l.samples}, {"dim", l.dim}, {"full", l.full}});
  }
  return Json{{"hypothesis_ok", r.hypothesis_ok},
              {"scalar_point_count", r.scalar.points.size()},
              {"positive_dimensional", r.scalar.positive_dimensional},
              {"local_dimension", r.scalar.local_dimension},
              {"matspan_per_level", std::move(levels)},
              {"scalar_points", std::move(scalar)}};
}

std::string render_text(const Json& doc) {
  std::ostringstream out;
  render(out, doc, "");
  return out.str();
}

}  // namespace freeball::cli
