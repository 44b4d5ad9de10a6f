#include "freeball/nc_map.hpp"

#include <cmath>
#include <variant>

#include "freeball/rng.hpp"

namespace freeball {

const char* to_string(MapKind kind) noexcept {
  switch (kind) {
    case MapKind::Polynomial: return "polynomial";
    case MapKind::Scaling: return "scale";
    case MapKind::Mobius: return "mobius";
    case MapKind::Composition: return "compose";
  }
  return "unknown";
}

namespace {

struct PolynomialData {
  std::vector<FreePolynomial> coords;
};

struct ScalingData {
  std::vector<Complex> factors;
};

struct MobiusData {
  ComplexVector a;
  double delta_a = 1.0;        // (1 - a a^*)^{1/2}
  ComplexMatrix delta_a_star;  // (I_d - a^* a)^{1/2}
};

}  // namespace

struct NcMap::Node {
  int d_in = 0;
  int d_out = 0;
  double radius = 1.0;
  bool entire = true;
  std::string label;
  MapKind kind = MapKind::Polynomial;
  std::variant<PolynomialData, ScalingData, MobiusData> data;
  std::vector<NcMap> parts;  // (outer, inner) for compositions
};

NcMap NcMap::polynomial(std::vector<FreePolynomial> coords, std::string label) {
  if (coords.empty()) throw Error(ErrorKind::Dimension, "polynomial map needs d_out >= 1");
  const int d = coords.front().d();
  if (d < 1) throw Error(ErrorKind::Dimension, "polynomial map needs d_in >= 1");
  for (const auto& p : coords) {
    if (p.d() != d) throw Error(ErrorKind::Dimension, "polynomial map coordinates disagree on d");
  }
  auto node = std::make_shared<Node>();
  node->d_in = d;
  node->d_out = static_cast<int>(coords.size());
  node->kind = MapKind::Polynomial;
  node->label = label.empty() ? "polynomial" : std::move(label);
  node->data = PolynomialData{std::move(coords)};
  return NcMap(std::move(node));
}

NcMap NcMap::identity(int d) {
  std::vector<FreePolynomial> coords;
  for (int j = 0; j < d; ++j) coords.push_back(FreePolynomial::variable(d, j));
  return polynomial(std::move(coords), "identity");
}

NcMap NcMap::scaling(std::vector<Complex> factors) {
  if (factors.empty()) throw Error(ErrorKind::Dimension, "scaling map needs d >= 1");
  for (Complex c : factors) {
    if (!(std::abs(c) <= 1.0 + 1e-15)) {
      throw Error(ErrorKind::Parameter, "scaling factors must satisfy |c| <= 1");
    }
  }
  auto node = std::make_shared<Node>();
  node->d_in = node->d_out = static_cast<int>(factors.size());
  node->kind = MapKind::Scaling;
  node->label = "scale";
  node->data = ScalingData{std::move(factors)};
  return NcMap(std::move(node));
}

NcMap NcMap::mobius(const ComplexVector& a) {
  if (a.size() < 1) throw Error(ErrorKind::Dimension, "mobius parameter needs d >= 1");
  const double norm_a = a.norm();
  if (!(norm_a < 1.0)) {
    throw Error(ErrorKind::Parameter, "mobius parameter must satisfy ||a|| < 1 (got " +
                                          std::to_string(norm_a) + ")");
  }
  const int d = static_cast<int>(a.size());
  MobiusData data;
  data.a = a;
  data.delta_a = std::sqrt(1.0 - norm_a * norm_a);
  // a is a row vector, so a^* a is the d x d matrix conj(a) a^T.
  const ComplexMatrix a_star_a = a.conjugate() * a.transpose();
  data.delta_a_star = hermitian_sqrt(ComplexMatrix::Identity(d, d) - a_star_a);
  auto node = std::make_shared<Node>();
  node->d_in = node->d_out = d;
  node->kind = MapKind::Mobius;
  node->entire = false;
  node->label = "mobius";
  node->data = std::move(data);
  return NcMap(std::move(node));
}

NcMap NcMap::composition(const NcMap& outer, const NcMap& inner) {
  if (inner.d_out() != outer.d_in()) {
    throw Error(ErrorKind::Dimension, "compose: inner d_out = " + std::to_string(inner.d_out()) +
                                          " but outer d_in = " + std::to_string(outer.d_in()));
  }
  auto node = std::make_shared<Node>();
  node->d_in = inner.d_in();
  node->d_out = outer.d_out();
  node->radius = inner.domain_radius();
  node->entire = outer.is_entire() && inner.is_entire();
  node->kind = MapKind::Composition;
  node->label = "compose";
  node->data = PolynomialData{};
  node->parts = {outer, inner};
  return NcMap(std::move(node));
}

int NcMap::d_in() const { return node_->d_in; }
int NcMap::d_out() const { return node_->d_out; }
double NcMap::domain_radius() const { return node_->radius; }
MapKind NcMap::kind() const { return node_->kind; }
bool NcMap::is_entire() const { return node_->entire; }
const std::string& NcMap::label() const { return node_->label; }

const std::vector<FreePolynomial>& NcMap::polynomials() const {
  if (node_->kind != MapKind::Polynomial) throw Error(ErrorKind::Precondition, "not a polynomial map");
  return std::get<PolynomialData>(node_->data).coords;
}

const std::vector<Complex>& NcMap::factors() const {
  if (node_->kind != MapKind::Scaling) throw Error(ErrorKind::Precondition, "not a scaling map");
  return std::get<ScalingData>(node_->data).factors;
}

const ComplexVector& NcMap::mobius_parameter() const {
  if (node_->kind != MapKind::Mobius) throw Error(ErrorKind::Precondition, "not a mobius map");
  return std::get<MobiusData>(node_->data).a;
}

const NcMap& NcMap::outer() const {
  if (node_->kind != MapKind::Composition) throw Error(ErrorKind::Precondition, "not a composition");
  return node_->parts[0];
}

const NcMap& NcMap::inner() const {
  if (node_->kind != MapKind::Composition) throw Error(ErrorKind::Precondition, "not a composition");
  return node_->parts[1];
}

namespace {

MatrixTuple eval_mobius(const MobiusData& m, const MatrixTuple& x) {
  const int n = x.n();
  const int d = x.d();
  ComplexMatrix resolvent_arg = ComplexMatrix::Identity(n, n);
  for (int j = 0; j < d; ++j) resolvent_arg -= std::conj(m.a(j)) * x[j];
  Eigen::PartialPivLU<ComplexMatrix> lu(resolvent_arg);
  if (!(std::abs(lu.determinant()) > 1e-300) || !(condition_number(resolvent_arg) < 1e14)) {
    throw Error(ErrorKind::Domain, "mobius: I - X a^* is not invertible at this point");
  }
  std::vector<ComplexMatrix> out;
  out.reserve(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) {
    ComplexMatrix mixed = ComplexMatrix::Zero(n, n);
    for (int i = 0; i < d; ++i) mixed += m.delta_a_star(i, j) * x[i];
    out.push_back(m.a(j) * ComplexMatrix::Identity(n, n) - m.delta_a * lu.solve(mixed));
  }
  return MatrixTuple(std::move(out));
}

MatrixTuple eval_node(const NcMap::Node& node, const MatrixTuple& x) {
  if (x.d() != node.d_in) {
    throw Error(ErrorKind::Dimension, "map expects d = " + std::to_string(node.d_in) +
                                          ", got d = " + std::to_string(x.d()));
  }
  switch (node.kind) {
    case MapKind::Polynomial: {
      const auto& coords = std::get<PolynomialData>(node.data).coords;
      std::vector<ComplexMatrix> out;
      out.reserve(coords.size());
      for (const auto& p : coords) out.push_back(eval_poly(p, x));
      return MatrixTuple(std::move(out));
    }
    case MapKind::Scaling: {
      const auto& factors = std::get<ScalingData>(node.data).factors;
      std::vector<ComplexMatrix> out;
      out.reserve(factors.size());
      for (int j = 0; j < x.d(); ++j) out.push_back(factors[static_cast<std::size_t>(j)] * x[j]);
      return MatrixTuple(std::move(out));
    }
    case MapKind::Mobius:
      return eval_mobius(std::get<MobiusData>(node.data), x);
    case MapKind::Composition:
      return node.parts[0].evaluate_unchecked(node.parts[1].evaluate_unchecked(x));
  }
  throw Error(ErrorKind::Precondition, "unknown map kind");
}

}  // namespace

MatrixTuple NcMap::evaluate_unchecked(const MatrixTuple& x) const { return eval_node(*node_, x); }

MatrixTuple eval_map(const NcMap& f, const MatrixTuple& x) {
  if (x.d() != f.d_in()) {
    throw Error(ErrorKind::Dimension, "map expects d = " + std::to_string(f.d_in()) +
                                          ", got d = " + std::to_string(x.d()));
  }
  const double norm = row_norm(x);
  if (!(norm < f.domain_radius())) {
    throw Error(ErrorKind::Domain, "point has row norm " + std::to_string(norm) +
                                       ", outside the domain of radius " +
                                       std::to_string(f.domain_radius()));
  }
  return f.evaluate_unchecked(x);
}

NcMap mobius(const ComplexVector& a) { return NcMap::mobius(a); }

NcMap compose(const NcMap& g, const NcMap& f) { return NcMap::composition(g, f); }

TangentTuple diff_diff(const NcMap& f, const MatrixTuple& x, const MatrixTuple& y,
                       const TangentTuple& z) {
  if (x.d() != f.d_in() || y.d() != f.d_in() || z.d() != f.d_in()) {
    throw Error(ErrorKind::Dimension, "diff_diff: tuples must have d = " + std::to_string(f.d_in()));
  }
  const int n = x.n();
  const int m = y.n();
  if (z.rows() != n || z.cols() != m) {
    throw Error(ErrorKind::Dimension, "diff_diff: direction must be " + std::to_string(n) + "x" +
                                          std::to_string(m));
  }
  const double nx = row_norm(x);
  const double ny = row_norm(y);
  const double margin = f.domain_radius() - std::max(nx, ny);
  if (!f.is_entire() && !(margin > 0.0)) {
    throw Error(ErrorKind::Domain, "diff_diff: base points outside the domain (row norms " +
                                       std::to_string(nx) + ", " + std::to_string(ny) + ")");
  }
  const double t = f.is_entire() ? 1.0 : 0.5 * margin / (1.0 + z.norm());
  std::vector<ComplexMatrix> block;
  block.reserve(static_cast<std::size_t>(x.d()));
  for (int j = 0; j < x.d(); ++j) {
    ComplexMatrix b = ComplexMatrix::Zero(n + m, n + m);
    b.topLeftCorner(n, n) = x[j];
    b.topRightCorner(n, m) = t * z[j];
    b.bottomRightCorner(m, m) = y[j];
    block.push_back(std::move(b));
  }
  const MatrixTuple image = f.evaluate_unchecked(MatrixTuple(std::move(block)));
  std::vector<ComplexMatrix> out;
  out.reserve(static_cast<std::size_t>(image.d()));
  for (int j = 0; j < image.d(); ++j) out.push_back(image[j].topRightCorner(n, m) / t);
  return TangentTuple(std::move(out));
}

namespace {

TangentTuple unit_direction(int d, int n, int index) {
  std::vector<ComplexMatrix> blocks(static_cast<std::size_t>(d), ComplexMatrix::Zero(n, n));
  const int per = n * n;
  const int j = index / per;
  const int rem = index % per;
  blocks[static_cast<std::size_t>(j)](rem % n, rem / n) = 1.0;
  return TangentTuple(std::move(blocks));
}

}  // namespace

ComplexMatrix derivative_superop(const NcMap& f, const MatrixTuple& x) {
  const int n = x.n();
  const int dim_in = f.d_in() * n * n;
  ComplexMatrix out(static_cast<Eigen::Index>(f.d_out()) * n * n, dim_in);
  for (int c = 0; c < dim_in; ++c) {
    out.col(c) = vectorize(diff_diff(f, x, x, unit_direction(f.d_in(), n, c)));
  }
  return out;
}

ComplexMatrix finite_difference_derivative(const NcMap& f, const MatrixTuple& x, double h) {
  if (!(h > 0.0)) throw Error(ErrorKind::Parameter, "finite difference step must be positive");
  const double norm = row_norm(x);
  if (!(norm + h < f.domain_radius())) {
    throw Error(ErrorKind::Domain, "finite_difference_derivative: margin to the boundary is below h");
  }
  const int n = x.n();
  const int dim_in = f.d_in() * n * n;
  ComplexMatrix out(static_cast<Eigen::Index>(f.d_out()) * n * n, dim_in);
  for (int c = 0; c < dim_in; ++c) {
    const MatrixTuple e = unit_direction(f.d_in(), n, c).as_point();
    const MatrixTuple plus = eval_map(f, x + e * Complex(h));
    const MatrixTuple minus = eval_map(f, x - e * Complex(h));
    out.col(c) = (vectorize(plus) - vectorize(minus)) / (2.0 * h);
  }
  return out;
}

namespace {

void validate_contractive_symbol(const FreePolynomial& g) {
  if (g.d() != 1) throw Error(ErrorKind::Parameter, "test map symbol g must be a polynomial in x1");
  // Sup of ||g(X)|| over the closed unit ball is approached on the boundary;
  // sample boundary and interior points at levels 1-3.
  Engine rng = make_engine(0, "make_test_map.g");
  for (int level = 1; level <= 3; ++level) {
    for (int s = 0; s < 128; ++s) {
      ComplexMatrix c = random_gaussian(rng, level, level);
      const double target = s % 2 == 0 ? 1.0 : uniform(rng, 0.0, 1.0);
      c *= target / spectral_norm(c);
      const double value = spectral_norm(eval_poly(g, MatrixTuple({c})));
      if (value > 1.0 + 1e-12) {
        throw Error(ErrorKind::Parameter, "test map symbol g is not contractive: ||g(X)|| = " +
                                              std::to_string(value));
      }
    }
  }
}

}  // namespace

NcMap make_test_map(const TestMapSpec& spec) {
  switch (spec.family) {
    case TestMapSpec::Family::Scaling: {
      if (spec.factors.empty()) throw Error(ErrorKind::Parameter, "scaling test map needs factors");
      for (Complex c : spec.factors) {
        if (!(c == Complex(1.0) || std::abs(c) < 1.0)) {
          throw Error(ErrorKind::Parameter, "scaling test map factors must be 1 or satisfy |c| < 1");
        }
      }
      return NcMap::scaling(spec.factors);
    }
    case TestMapSpec::Family::Nonlinear: {
      const FreePolynomial g = spec.g.value_or(FreePolynomial::constant(1, 0.5) +
                                               FreePolynomial::variable(1, 0) * Complex(0.5));
      validate_contractive_symbol(g);
      // Lift g(x1) into two variables and form x2 * g(x1).
      FreePolynomial lifted(2);
      for (const auto& [w, c] : g.terms()) lifted.add_term(w, c);
      const FreePolynomial second = FreePolynomial::variable(2, 1) * lifted;
      return NcMap::polynomial({FreePolynomial::variable(2, 0), second},
                               "testmap nonlinear g=" + g.to_string());
    }
    case TestMapSpec::Family::MobiusConjugate: {
      if (!spec.base) throw Error(ErrorKind::Parameter, "mobius-conjugate test map needs a base");
      const NcMap base = make_test_map(*spec.base);
      if (spec.a.size() != base.d_in()) {
        throw Error(ErrorKind::Parameter, "mobius-conjugate: parameter length must equal d");
      }
      const NcMap theta = NcMap::mobius(spec.a);
      return compose(theta, compose(base, theta));
    }
  }
  throw Error(ErrorKind::Parameter, "unknown test map family");
}

}  // namespace freeball
