#pragma once

// Free polynomials in d noncommuting variables and their evaluation on
// matrix tuples.

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "freeball/nc_point.hpp"

namespace freeball {

/// A word in the free monoid on d letters. Letters are stored 0-based
/// (letter k means variable x_{k+1}); the empty word is the identity.
struct Word {
  std::vector<int> letters;

  std::size_t length() const { return letters.size(); }
  Word operator+(const Word& tail) const;
  std::string to_string() const;  ///< "x1*x2", or "1" for the empty word
};

/// Shortlex order: by length, then lexicographic.
bool operator<(const Word& a, const Word& b);
bool operator==(const Word& a, const Word& b);

class FreePolynomial {
 public:
  explicit FreePolynomial(int d);

  static FreePolynomial constant(int d, Complex c);
  static FreePolynomial variable(int d, int letter);
  static FreePolynomial monomial(int d, Word w, Complex c = 1.0);

  int d() const { return d_; }
  const std::map<Word, Complex>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;
  /// True when every word has the same length.
  bool is_homogeneous() const;

  /// Adds c to the coefficient of w; coefficients that become exactly zero are dropped.
  void add_term(const Word& w, Complex c);

  FreePolynomial operator+(const FreePolynomial& other) const;
  FreePolynomial operator-(const FreePolynomial& other) const;
  FreePolynomial operator*(const FreePolynomial& other) const;
  FreePolynomial operator*(Complex s) const;

  std::string to_string() const;

 private:
  void check_same_d(const FreePolynomial& other) const;

  int d_;
  std::map<Word, Complex> terms_;
};

/// X_{w_1} X_{w_2} ... X_{w_k}; I_n for the empty word.
ComplexMatrix eval_word(const Word& w, const MatrixTuple& x);

/// sum_w coeff(w) X^w. Prefix products are shared within the call.
ComplexMatrix eval_poly(const FreePolynomial& p, const MatrixTuple& x);

/// Parses text such as "1*x1*x2 - 1*x2*x1 - 0.5*x2" over variables x1..xd.
/// Accepts real or imaginary literals ("0.5", "2i", "i"), '*', '+', '-',
/// and parentheses. Throws Parse with a line:column position.
FreePolynomial parse_polynomial(std::string_view text, int d);

struct SzegoTruncation {
  ComplexMatrix value;
  double tail_bound = 0.0;  ///< +infinity when d ||Z|| ||W|| >= 1
};

/// sum over words of length <= N of Z^a T (W^a)^*, with the coarse tail
/// bound ||T||_F rho^{N+1} / (1 - rho), rho = d row_norm(Z) row_norm(W).
SzegoTruncation szego_kernel_truncated(const MatrixTuple& z, const MatrixTuple& w,
                                       const ComplexMatrix& t, int max_length);

}  // namespace freeball
