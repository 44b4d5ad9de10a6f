#include "map_parser.hpp"

#include <cctype>
#include <memory>
#include <string>

namespace freeball::cli {

namespace {

class MapParser {
 public:
  explicit MapParser(std::string_view text) : text_(text) {}

  NcMap parse_all() {
    NcMap m = parse_map_expr();
    skip_space();
    if (pos_ < text_.size()) error("unexpected trailing input");
    return m;
  }

  TestMapSpec parse_testmap_body() {
    TestMapSpec spec;
    std::string kind;
    bool have_params = false;
    std::vector<Complex> params;
    while (true) {
      skip_space();
      const std::size_t start = pos_;
      const std::string key = identifier();
      if (key.empty()) break;
      expect('=');
      if (key == "kind") {
        kind = identifier();
        if (kind.empty()) error("expected a test map kind");
      } else if (key == "params") {
        params = list();
        have_params = true;
      } else if (key == "a") {
        const auto a = list();
        spec.a = ComplexVector(static_cast<Eigen::Index>(a.size()));
        for (std::size_t i = 0; i < a.size(); ++i) spec.a(static_cast<Eigen::Index>(i)) = a[i];
      } else if (key == "base") {
        expect('(');
        skip_space();
        if (identifier() != "testmap") error("base must be a testmap");
        auto base = std::make_shared<TestMapSpec>(parse_testmap_body());
        expect(')');
        spec.base = std::move(base);
      } else {
        pos_ = start;
        error("unknown testmap field '" + key + "'");
      }
    }
    if (kind == "scale") {
      if (!have_params) error("testmap kind=scale needs params=(...)");
      spec.family = TestMapSpec::Family::Scaling;
      spec.factors = params;
    } else if (kind == "nonlinear") {
      spec.family = TestMapSpec::Family::Nonlinear;
      if (have_params) {
        FreePolynomial g(1);
        for (std::size_t k = 0; k < params.size(); ++k) {
          g.add_term(Word{std::vector<int>(k, 0)}, params[k]);
        }
        spec.g = g;
      }
    } else if (kind == "conjugated") {
      spec.family = TestMapSpec::Family::MobiusConjugate;
      if (!spec.base) error("testmap kind=conjugated needs base=(testmap ...)");
      if (spec.a.size() == 0) error("testmap kind=conjugated needs a=(...)");
    } else {
      error(kind.empty() ? "testmap needs kind=scale|nonlinear|conjugated"
                         : "unknown testmap kind '" + kind + "'");
    }
    return spec;
  }

 private:
  NcMap parse_map_expr() {
    skip_space();
    if (peek() == '[') return polys(std::nullopt);
    const std::size_t start = pos_;
    const std::string head = identifier();
    if (head == "compose") {
      expect('(');
      NcMap outer = parse_map_expr();
      expect(';');
      NcMap inner = parse_map_expr();
      expect(')');
      return compose(outer, inner);
    }
    if (head == "identity") {
      const int d = keyword_int("d");
      return NcMap::identity(d);
    }
    if (head == "poly") {
      skip_space();
      std::optional<int> d;
      if (peek() == 'd') d = keyword_int("d");
      return polys(d);
    }
    if (head == "scale") {
      keyword("factors");
      const auto factors = list();
      return NcMap::scaling(factors);
    }
    if (head == "mobius") {
      keyword("a");
      const auto a = list();
      ComplexVector v(static_cast<Eigen::Index>(a.size()));
      for (std::size_t i = 0; i < a.size(); ++i) v(static_cast<Eigen::Index>(i)) = a[i];
      return mobius(v);
    }
    if (head == "testmap") {
      const TestMapSpec spec = parse_testmap_body();
      return make_test_map(spec);
    }
    pos_ = start;
    error(head.empty() ? "expected a map" : "unknown map form '" + head + "'");
  }

  NcMap polys(std::optional<int> d) {
    expect('[');
    std::vector<std::pair<std::size_t, std::string>> items;
    while (true) {
      skip_space();
      const std::size_t start = pos_;
      std::string item = until_separator(",]");
      if (item.find_first_not_of(" \t\r\n") == std::string::npos) error("empty polynomial");
      items.emplace_back(start, std::move(item));
      if (peek() == ',') {
        ++pos_;
        continue;
      }
      expect(']');
      break;
    }
    int dim = d.value_or(0);
    if (!d) {
      dim = static_cast<int>(items.size());
      for (const auto& [start, item] : items) dim = std::max(dim, highest_variable(item));
    }
    std::vector<FreePolynomial> coords;
    for (const auto& [start, item] : items) {
      try {
        coords.push_back(parse_polynomial(item, dim));
      } catch (const Error& e) {
        pos_ = start;
        error(std::string("in polynomial: ") + e.what());
      }
    }
    return NcMap::polynomial(std::move(coords));
  }

  static int highest_variable(const std::string& s) {
    int best = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] == 'x' && i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 1]))) {
        std::size_t j = i + 1;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        best = std::max(best, std::stoi(s.substr(i + 1, j - i - 1)));
        i = j - 1;
      }
    }
    return best;
  }

  std::vector<Complex> list() {
    expect('(');
    std::vector<Complex> out;
    while (true) {
      skip_space();
      const std::size_t start = pos_;
      const std::string item = until_separator(",)");
      try {
        out.push_back(parse_complex(item));
      } catch (const Error& e) {
        pos_ = start;
        error(e.what());
      }
      if (peek() == ',') {
        ++pos_;
        continue;
      }
      expect(')');
      return out;
    }
  }

  // Text up to the first of `stops` at parenthesis depth zero.
  std::string until_separator(std::string_view stops) {
    int depth = 0;
    const std::size_t start = pos_;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (depth == 0 && stops.find(c) != std::string_view::npos) break;
      if (c == '(') ++depth;
      if (c == ')') {
        if (depth == 0) break;
        --depth;
      }
      ++pos_;
    }
    if (pos_ >= text_.size()) error("unterminated list");
    return std::string(text_.substr(start, pos_ - start));
  }

  void keyword(const char* name) {
    skip_space();
    const std::size_t start = pos_;
    if (identifier() != name) {
      pos_ = start;
      error(std::string("expected ") + name + "=");
    }
    expect('=');
  }

  int keyword_int(const char* name) {
    keyword(name);
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) error("expected an integer");
    return std::stoi(std::string(text_.substr(start, pos_ - start)));
  }

  std::string identifier() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' || text_[pos_] == '-')) {
      ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  void expect(char c) {
    skip_space();
    if (peek() != c) error(std::string("expected '") + c + "'");
    ++pos_;
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void error(const std::string& message) const {
    int line = 1, column = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw Error(ErrorKind::Parse, "map " + std::to_string(line) + ":" + std::to_string(column) + ": " + message);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

NcMap parse_map(std::string_view text) { return MapParser(text).parse_all(); }

Complex parse_complex(std::string_view text) {
  const FreePolynomial p = parse_polynomial(text, 0);
  if (p.is_zero()) return 0.0;
  if (p.degree() > 0) throw Error(ErrorKind::Parse, "expected a complex constant");
  return p.terms().begin()->second;
}

std::vector<Complex> parse_complex_list(std::string_view text) {
  std::string_view body = text;
  while (!body.empty() && std::isspace(static_cast<unsigned char>(body.front()))) body.remove_prefix(1);
  while (!body.empty() && std::isspace(static_cast<unsigned char>(body.back()))) body.remove_suffix(1);
  if (body.size() >= 2 && body.front() == '(' && body.back() == ')') body = body.substr(1, body.size() - 2);
  std::vector<Complex> out;
  std::size_t start = 0;
  while (start <= body.size()) {
    const std::size_t comma = body.find(',', start);
    const std::string_view item = body.substr(start, comma == std::string_view::npos ? body.npos : comma - start);
    out.push_back(parse_complex(item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace freeball::cli
