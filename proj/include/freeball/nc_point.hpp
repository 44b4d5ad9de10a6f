#pragma once

// Points of the free matrix universe: d-tuples of n x n matrices, with the
// row norm that defines the free ball, direct sums and the similarity action.

#include <span>
#include <vector>

#include "freeball/matrix_core.hpp"

namespace freeball {

/// X = (X_1, ..., X_d), every coordinate n x n. Immutable once built.
class MatrixTuple {
 public:
  /// Throws Dimension on empty input or mismatched/non-square coordinates,
  /// Parameter on non-finite entries.
  explicit MatrixTuple(std::vector<ComplexMatrix> coords);

  static MatrixTuple zero(int d, int n);
  /// alpha (x) I_n: the scalar point alpha repeated along the diagonal.
  static MatrixTuple scalar(std::span<const Complex> alpha, int n);
  static MatrixTuple scalar(const ComplexVector& alpha, int n);

  int d() const { return static_cast<int>(coords_.size()); }
  int n() const { return n_; }

  const ComplexMatrix& operator[](int j) const { return coords_[static_cast<std::size_t>(j)]; }
  std::span<const ComplexMatrix> coords() const { return coords_; }

  /// The n x (n d) horizontal block [X_1 ... X_d].
  ComplexMatrix row_block() const;

  /// Frobenius norm of the whole tuple.
  double norm() const;

  MatrixTuple operator+(const MatrixTuple& other) const;
  MatrixTuple operator-(const MatrixTuple& other) const;
  MatrixTuple operator*(Complex s) const;

 private:
  std::vector<ComplexMatrix> coords_;
  int n_ = 0;
};

inline MatrixTuple operator*(Complex s, const MatrixTuple& x) { return x * s; }

/// Z in M_{n,m}^d: tangent directions for the difference-differential
/// operator. Blocks share one (possibly rectangular) shape.
class TangentTuple {
 public:
  explicit TangentTuple(std::vector<ComplexMatrix> blocks);
  explicit TangentTuple(const MatrixTuple& x);

  static TangentTuple zero(int d, int rows, int cols);

  int d() const { return static_cast<int>(blocks_.size()); }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  const ComplexMatrix& operator[](int j) const { return blocks_[static_cast<std::size_t>(j)]; }
  std::span<const ComplexMatrix> blocks() const { return blocks_; }

  double norm() const;

  /// Reinterpret as a point; throws Dimension unless square.
  MatrixTuple as_point() const;

 private:
  std::vector<ComplexMatrix> blocks_;
  int rows_ = 0;
  int cols_ = 0;
};

/// Coordinate-major, column-stacked vectorization: entry (r, c) of
/// coordinate j lands at index j*rows*cols + c*rows + r.
ComplexVector vectorize(const MatrixTuple& x);
ComplexVector vectorize(const TangentTuple& z);
MatrixTuple unvectorize_point(const ComplexVector& v, int d, int n);
TangentTuple unvectorize_tangent(const ComplexVector& v, int d, int rows, int cols);

/// Largest singular value of [X_1 ... X_d].
double row_norm(const MatrixTuple& x);

/// Strict membership: row_norm(X) < 1 - tol.
bool in_ball(const MatrixTuple& x, double tol = 0.0);

MatrixTuple direct_sum(const MatrixTuple& x, const MatrixTuple& y);

/// S . X = S^{-1} X S. Throws Singular when cond(S) > 1e12.
MatrixTuple conjugate(const MatrixTuple& x, const ComplexMatrix& s);

/// Coordinate-wise transpose, no conjugation.
MatrixTuple transpose_tuple(const MatrixTuple& x);

/// Sum_j X_j X_j^*.
ComplexMatrix gram_sum(const MatrixTuple& x);

struct CoisometryFit {
  bool is_coisometry_direction = false;
  double scale = 0.0;    ///< fitted r with sum X_j X_j^* ~ r I
  double residual = 0.0; ///< ||sum X_j X_j^* - r I||_F
};

/// Tests sum X_j X_j^* = r I for some r > 0 with residual <= tol * max(1, r).
/// Throws Degenerate on the zero tuple.
CoisometryFit is_coisometry_direction(const MatrixTuple& x, double tol);

}  // namespace freeball
