#include "freeball/free_poly.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

namespace freeball {

Word Word::operator+(const Word& tail) const {
  Word out = *this;
  out.letters.insert(out.letters.end(), tail.letters.begin(), tail.letters.end());
  return out;
}

std::string Word::to_string() const {
  if (letters.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (i) s += '*';
    s += 'x' + std::to_string(letters[i] + 1);
  }
  return s;
}

bool operator<(const Word& a, const Word& b) {
  if (a.letters.size() != b.letters.size()) return a.letters.size() < b.letters.size();
  return a.letters < b.letters;
}

bool operator==(const Word& a, const Word& b) { return a.letters == b.letters; }

FreePolynomial::FreePolynomial(int d) : d_(d) {
  if (d < 0) throw Error(ErrorKind::Parameter, "polynomial needs d >= 0");
}

FreePolynomial FreePolynomial::constant(int d, Complex c) {
  FreePolynomial p(d);
  p.add_term(Word{}, c);
  return p;
}

FreePolynomial FreePolynomial::variable(int d, int letter) {
  return monomial(d, Word{{letter}});
}

FreePolynomial FreePolynomial::monomial(int d, Word w, Complex c) {
  FreePolynomial p(d);
  p.add_term(w, c);
  return p;
}

int FreePolynomial::degree() const {
  int deg = 0;
  for (const auto& [w, c] : terms_) deg = std::max(deg, static_cast<int>(w.length()));
  return deg;
}

bool FreePolynomial::is_homogeneous() const {
  if (terms_.empty()) return true;
  const auto len = terms_.begin()->first.length();
  for (const auto& [w, c] : terms_) {
    if (w.length() != len) return false;
  }
  return true;
}

void FreePolynomial::add_term(const Word& w, Complex c) {
  for (int letter : w.letters) {
    if (letter < 0 || letter >= d_) {
      throw Error(ErrorKind::Index, "letter x" + std::to_string(letter + 1) +
                                        " out of range for d = " + std::to_string(d_));
    }
  }
  if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
    throw Error(ErrorKind::Parameter, "polynomial coefficient is not finite");
  }
  auto it = terms_.find(w);
  if (it == terms_.end()) {
    if (c != Complex(0.0)) terms_.emplace(w, c);
    return;
  }
  it->second += c;
  if (it->second == Complex(0.0)) terms_.erase(it);
}

void FreePolynomial::check_same_d(const FreePolynomial& other) const {
  if (other.d_ != d_) throw Error(ErrorKind::Dimension, "polynomials over different d");
}

FreePolynomial FreePolynomial::operator+(const FreePolynomial& other) const {
  check_same_d(other);
  FreePolynomial out = *this;
  for (const auto& [w, c] : other.terms_) out.add_term(w, c);
  return out;
}

FreePolynomial FreePolynomial::operator-(const FreePolynomial& other) const {
  return *this + other * Complex(-1.0);
}

FreePolynomial FreePolynomial::operator*(const FreePolynomial& other) const {
  check_same_d(other);
  FreePolynomial out(d_);
  for (const auto& [u, a] : terms_) {
    for (const auto& [v, b] : other.terms_) out.add_term(u + v, a * b);
  }
  return out;
}

FreePolynomial FreePolynomial::operator*(Complex s) const {
  FreePolynomial out(d_);
  for (const auto& [w, c] : terms_) out.add_term(w, s * c);
  return out;
}

std::string FreePolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  os.precision(17);
  bool first = true;
  for (const auto& [w, c] : terms_) {
    if (c.imag() == 0.0) {
      if (c.real() < 0.0) os << (first ? "-" : " - ");
      else if (!first) os << " + ";
      os << std::abs(c.real());
    } else {
      if (!first) os << " + ";
      os << '(' << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
    }
    if (!w.letters.empty()) os << '*' << w.to_string();
    first = false;
  }
  return os.str();
}

ComplexMatrix eval_word(const Word& w, const MatrixTuple& x) {
  ComplexMatrix out = ComplexMatrix::Identity(x.n(), x.n());
  for (int letter : w.letters) {
    if (letter < 0 || letter >= x.d()) {
      throw Error(ErrorKind::Index, "word letter x" + std::to_string(letter + 1) +
                                        " out of range for d = " + std::to_string(x.d()));
    }
    out = out * x[letter];
  }
  return out;
}

ComplexMatrix eval_poly(const FreePolynomial& p, const MatrixTuple& x) {
  if (p.d() != x.d()) {
    throw Error(ErrorKind::Dimension, "eval_poly: polynomial has d = " + std::to_string(p.d()) +
                                          ", point has d = " + std::to_string(x.d()));
  }
  const int n = x.n();
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  // Terms arrive in shortlex order; each product is built from the longest
  // cached prefix.
  std::map<Word, ComplexMatrix> prefixes;
  for (const auto& [w, c] : p.terms()) {
    Word prefix = w;
    const ComplexMatrix* base = nullptr;
    std::size_t start = 0;
    while (!prefix.letters.empty()) {
      auto it = prefixes.find(prefix);
      if (it != prefixes.end()) {
        base = &it->second;
        start = prefix.length();
        break;
      }
      prefix.letters.pop_back();
    }
    ComplexMatrix value = base ? *base : ComplexMatrix::Identity(n, n);
    Word built{std::vector<int>(w.letters.begin(), w.letters.begin() + static_cast<long>(start))};
    for (std::size_t i = start; i < w.length(); ++i) {
      value = value * x[w.letters[i]];
      built.letters.push_back(w.letters[i]);
      prefixes.emplace(built, value);
    }
    out += c * value;
  }
  return out;
}

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, int d) : text_(text), d_(d) {}

  FreePolynomial parse() {
    FreePolynomial p = expression();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorKind::Parse, "polynomial " + std::to_string(line) + ":" + std::to_string(col) +
                                      ": " + what);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  FreePolynomial expression() {
    FreePolynomial acc(d_);
    bool first = true;
    while (true) {
      skip_ws();
      double sign = 1.0;
      if (peek('+') || peek('-')) {
        sign = text_[pos_] == '-' ? -1.0 : 1.0;
        ++pos_;
      } else if (!first) {
        break;
      }
      acc = acc + term() * Complex(sign);
      first = false;
    }
    return acc;
  }

  FreePolynomial term() {
    FreePolynomial acc = factor();
    while (peek('*')) {
      ++pos_;
      acc = acc * factor();
    }
    if (peek('^')) fail("'^' is not supported; write repeated letters");
    return acc;
  }

  FreePolynomial factor() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      FreePolynomial inner = expression();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (c == 'x') {
      ++pos_;
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected variable index after 'x'");
      int index = 0;
      std::from_chars(text_.data() + start, text_.data() + pos_, index);
      if (index < 1 || index > d_) {
        pos_ = start;
        fail("variable x" + std::to_string(index) + " out of range for d = " + std::to_string(d_));
      }
      return FreePolynomial::variable(d_, index - 1);
    }
    if (c == 'i') {
      ++pos_;
      return FreePolynomial::constant(d_, Complex(0.0, 1.0));
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
        ++pos_;
      }
      if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
        ++pos_;
        if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      }
      double value = 0.0;
      const auto [end, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
      if (ec != std::errc() || end != text_.data() + pos_) {
        pos_ = start;
        fail("malformed number");
      }
      if (pos_ < text_.size() && text_[pos_] == 'i') {
        ++pos_;
        return FreePolynomial::constant(d_, Complex(0.0, value));
      }
      return FreePolynomial::constant(d_, Complex(value, 0.0));
    }
    if (c == '^') fail("'^' is not supported; write repeated letters");
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  int d_;
  std::size_t pos_ = 0;
};

}  // namespace

FreePolynomial parse_polynomial(std::string_view text, int d) {
  return PolyParser(text, d).parse();
}

SzegoTruncation szego_kernel_truncated(const MatrixTuple& z, const MatrixTuple& w,
                                       const ComplexMatrix& t, int max_length) {
  if (z.d() != w.d()) throw Error(ErrorKind::Dimension, "szego kernel: Z and W have different d");
  if (t.rows() != z.n() || t.cols() != w.n()) {
    throw Error(ErrorKind::Dimension, "szego kernel: T must be Z.n x W.n");
  }
  if (max_length < 0) throw Error(ErrorKind::Parameter, "szego kernel: N must be >= 0");
  const double nz = row_norm(z);
  const double nw = row_norm(w);
  if (nz >= 1.0 || nw >= 1.0) {
    throw Error(ErrorKind::Domain, "szego kernel: Z and W must lie in the ball (row norms " +
                                       std::to_string(nz) + ", " + std::to_string(nw) + ")");
  }
  // Level-k term L_k = sum_{|a| = k} Z^a T (W^a)^* obeys L_{k+1} = sum_j Z_j L_k W_j^*.
  SzegoTruncation out;
  ComplexMatrix level = t;
  out.value = t;
  for (int k = 1; k <= max_length; ++k) {
    ComplexMatrix next = ComplexMatrix::Zero(t.rows(), t.cols());
    for (int j = 0; j < z.d(); ++j) next += z[j] * level * w[j].adjoint();
    level = std::move(next);
    out.value += level;
  }
  const double rho = z.d() * nz * nw;
  if (rho >= 1.0) {
    out.tail_bound = std::numeric_limits<double>::infinity();
  } else {
    out.tail_bound = t.norm() * std::pow(rho, max_length + 1) / (1.0 - rho);
  }
  return out;
}

}  // namespace freeball
