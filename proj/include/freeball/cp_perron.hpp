#pragma once

// The completely positive map Phi_X(T) = sum_j X_j T X_j^* attached to a
// tuple, its Perron eigenpair, and the similarity that turns a generic
// strict row contraction into a multiple of a coisometry.

#include "freeball/nc_point.hpp"
#include "freeball/structure.hpp"

namespace freeball {

ComplexMatrix apply_cp(const MatrixTuple& x, const ComplexMatrix& t);

/// n^2 x n^2 matrix of Phi_X acting on column-stacked vec(T):
/// sum_j conj(X_j) (x) X_j.
ComplexMatrix superoperator_matrix(const MatrixTuple& x);

/// Largest eigenvalue modulus of Phi_X.
double spectral_radius(const MatrixTuple& x);

struct PerronData {
  double r = 0.0;          ///< Perron eigenvalue
  ComplexMatrix a;         ///< Hermitian positive definite, trace n
  ComplexMatrix s;         ///< hermitian_sqrt(a)
  double residual = 0.0;   ///< ||Phi_X(A) - r A||_F
  double min_eigenvalue = 0.0;
  /// min over the other eigenvalues of |lambda - r| / r (1 when n = 1).
  double relative_gap = 1.0;
  bool near_degenerate = false;
  bool iterative = false;  ///< computed by power iteration instead of dense eigensolve
};

/// Raised by perron_pair on a non-generic tuple; carries an invariant
/// subspace (orthonormal columns) when one was found.
class IrreducibilityError : public Error {
 public:
  IrreducibilityError(const std::string& message, ComplexMatrix witness)
      : Error(ErrorKind::Irreducible, message), witness_(std::move(witness)) {}

  const ComplexMatrix& witness() const { return witness_; }

 private:
  ComplexMatrix witness_;
};

enum class PerronMethod { Automatic, Dense, PowerIteration };

/// Largest dense problem size (n) before Automatic switches to power iteration.
inline constexpr int kDensePerronMaxLevel = 16;

/// Throws IrreducibilityError for non-generic X, Domain for points outside
/// the ball, NumericalFailure when the eigenmatrix is not positive definite
/// or the Perron eigenvalue is numerically repeated.
PerronData perron_pair(const MatrixTuple& x, const ToleranceConfig& tol = {},
                       PerronMethod method = PerronMethod::Automatic);

struct CoisometryNormalization {
  ComplexMatrix s;
  double r = 0.0;
  MatrixTuple normalized;  ///< S^{-1} X S, with sum Y_j Y_j^* = r I
  double residual = 0.0;   ///< ||sum Y_j Y_j^* - r I||_F
};

CoisometryNormalization coisometry_normalizer(const MatrixTuple& x, const ToleranceConfig& tol = {});

}  // namespace freeball
