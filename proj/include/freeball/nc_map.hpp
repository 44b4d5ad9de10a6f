#pragma once

// Graded nc maps between free balls and their difference-differential
// operators. Every map evaluates levelwise: an n x n point maps to an
// n x n point.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "freeball/free_poly.hpp"
#include "freeball/nc_point.hpp"

namespace freeball {

enum class MapKind { Polynomial, Scaling, Mobius, Composition };

const char* to_string(MapKind kind) noexcept;

class NcMap {
 public:
  /// Coordinates given by free polynomials, all over the same d_in.
  static NcMap polynomial(std::vector<FreePolynomial> coords, std::string label = {});
  static NcMap identity(int d);
  /// (X_1, ..., X_d) -> (c_1 X_1, ..., c_d X_d); requires |c_j| <= 1.
  static NcMap scaling(std::vector<Complex> factors);
  /// Free ball automorphism swapping 0 and a (x) I; requires ||a|| < 1.
  static NcMap mobius(const ComplexVector& a);
  /// outer o inner.
  static NcMap composition(const NcMap& outer, const NcMap& inner);

  int d_in() const;
  int d_out() const;
  double domain_radius() const;
  MapKind kind() const;
  /// Polynomial-type maps are defined on every tuple, not just the ball.
  bool is_entire() const;
  const std::string& label() const;

  // Kind-specific data; each throws Precondition when called on another kind.
  const std::vector<FreePolynomial>& polynomials() const;
  const std::vector<Complex>& factors() const;
  const ComplexVector& mobius_parameter() const;
  const NcMap& outer() const;
  const NcMap& inner() const;

  /// Evaluation without the domain check. Polynomial kinds accept any
  /// tuple; Mobius kinds require I - X a^* to be invertible.
  MatrixTuple evaluate_unchecked(const MatrixTuple& x) const;

  struct Node;

 private:
  explicit NcMap(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// f(X). Throws Dimension on a d mismatch and Domain when
/// row_norm(X) >= f.domain_radius().
MatrixTuple eval_map(const NcMap& f, const MatrixTuple& x);

NcMap mobius(const ComplexVector& a);

/// g o f; throws Dimension unless f.d_out() == g.d_in().
NcMap compose(const NcMap& g, const NcMap& f);

/// Delta f(X, Y)(Z): the upper-right block of f([[X, tZ], [0, Y]]) / t.
/// t = 1 for entire maps, otherwise t keeps the block point inside the
/// domain; linearity in Z makes the rescaling exact.
TangentTuple diff_diff(const NcMap& f, const MatrixTuple& x, const MatrixTuple& y,
                       const TangentTuple& z);

/// Matrix of Delta f(X, X) in the coordinate-major column-stacked basis:
/// size (d_out n^2) x (d_in n^2).
ComplexMatrix derivative_superop(const NcMap& f, const MatrixTuple& x);

/// Central-difference oracle for derivative_superop.
ComplexMatrix finite_difference_derivative(const NcMap& f, const MatrixTuple& x, double h);

struct TestMapSpec {
  enum class Family {
    Scaling,         ///< factors (1, ..., 1, c_k, ..., c_d)
    Nonlinear,       ///< (X, Y) -> (X, Y g(X)), g a polynomial in one variable
    MobiusConjugate  ///< mobius(a) o base o mobius(a)
  };

  Family family = Family::Scaling;
  std::vector<Complex> factors;
  /// Polynomial in x1 for the Nonlinear family; default 0.5 + 0.5*x1.
  std::optional<FreePolynomial> g;
  ComplexVector a;
  std::shared_ptr<const TestMapSpec> base;
};

/// Builds a fixture self-map of the ball. Throws Parameter for factors
/// outside {1} U {|c| < 1}, for g with sup ||g|| > 1 on sampled points of
/// the closed ball, or for ||a|| >= 1.
NcMap make_test_map(const TestMapSpec& spec);

}  // namespace freeball
