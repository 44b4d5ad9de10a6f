#pragma once

// Dense complex linear algebra shared by every module: Hermitian square
// roots, relative-tolerance rank decisions, nullspaces and subspace angles.

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "freeball/error.hpp"

namespace freeball {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

struct ToleranceConfig {
  double rank_tol = 1e-9;
  double residual_tol = 1e-8;
  double fd_step = 1e-6;

  /// Throws Parameter unless rank_tol >= 0 and the other fields are > 0.
  void validate() const;
};

/// Throws Parameter if any entry is NaN or infinite.
void require_finite(const ComplexMatrix& m, const char* what);

/// Unique positive-semidefinite square root of a Hermitian PSD matrix.
/// Eigenvalues in [-rank_tol * scale, 0) are clamped to zero.
ComplexMatrix hermitian_sqrt(const ComplexMatrix& m, const ToleranceConfig& tol = {});

/// Number of singular values strictly above tol * sigma_max (0 for the zero matrix).
int numerical_rank(const ComplexMatrix& m, double tol);

/// Orthonormal basis of the numerical nullspace, one vector per column.
/// The column count is cols() - numerical_rank(m, tol).
ComplexMatrix kernel_basis(const ComplexMatrix& m, double tol);

/// Orthonormal basis of the column space, using the same rank rule.
ComplexMatrix range_basis(const ComplexMatrix& m, double tol);

/// Orthonormal basis of the orthogonal complement of span(basis) in C^dim.
ComplexMatrix orthogonal_complement(const ComplexMatrix& basis, int dim);

/// Largest principal angle between the column spans of two orthonormal
/// bases. Returns pi/2 when the dimensions differ.
double max_principal_angle(const ComplexMatrix& q1, const ComplexMatrix& q2);

double spectral_norm(const ComplexMatrix& m);

/// sigma_max / sigma_min; infinity for singular input.
double condition_number(const ComplexMatrix& m);

/// Column-stacking vectorization.
ComplexVector vec(const ComplexMatrix& m);
ComplexMatrix unvec(const ComplexVector& v, int rows, int cols);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Eigenvalues of a Hermitian matrix in ascending order. The input is
/// Hermitized before decomposition.
RealVector hermitian_eigenvalues(const ComplexMatrix& m);

}  // namespace freeball
