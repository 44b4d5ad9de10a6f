#include "freeball/matrix_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

namespace freeball {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Dimension: return "dimension";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::Parameter: return "parameter";
    case ErrorKind::Degenerate: return "degenerate-input";
    case ErrorKind::Index: return "index";
    case ErrorKind::NotPositive: return "not-positive";
    case ErrorKind::Singular: return "singular";
    case ErrorKind::Irreducible: return "irreducibility";
    case ErrorKind::NumericalFailure: return "numerical-failure";
    case ErrorKind::IncompleteDecomposition: return "incomplete-decomposition";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

void ToleranceConfig::validate() const {
  if (!(rank_tol >= 0.0) || !(residual_tol > 0.0) || !(fd_step > 0.0)) {
    throw Error(ErrorKind::Parameter,
                "tolerances must satisfy rank_tol >= 0, residual_tol > 0, fd_step > 0");
  }
}

void require_finite(const ComplexMatrix& m, const char* what) {
  if (!m.allFinite()) {
    throw Error(ErrorKind::Parameter, std::string(what) + " has non-finite entries");
  }
}

ComplexMatrix hermitian_sqrt(const ComplexMatrix& m, const ToleranceConfig& tol) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorKind::Dimension, "hermitian_sqrt: matrix is " + std::to_string(m.rows()) +
                                          "x" + std::to_string(m.cols()) + ", expected square");
  }
  const double scale = std::max(1.0, m.norm());
  if ((m - m.adjoint()).norm() > tol.residual_tol * scale) {
    throw Error(ErrorKind::Precondition, "hermitian_sqrt: matrix is not Hermitian");
  }
  const ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(h);
  RealVector values = eig.eigenvalues();
  const double floor = -tol.rank_tol * std::max(1.0, values.cwiseAbs().maxCoeff());
  if (values.size() > 0 && values.minCoeff() < floor) {
    throw Error(ErrorKind::NotPositive, "hermitian_sqrt: min eigenvalue " +
                                            std::to_string(values.minCoeff()) + " is negative");
  }
  values = values.cwiseMax(0.0).cwiseSqrt();
  const ComplexMatrix& u = eig.eigenvectors();
  ComplexMatrix root = u * values.cast<Complex>().asDiagonal() * u.adjoint();
  return 0.5 * (root + root.adjoint());
}

namespace {

Eigen::JacobiSVD<ComplexMatrix> full_svd(const ComplexMatrix& m) {
  return Eigen::JacobiSVD<ComplexMatrix>(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
}

int rank_from_singular_values(const RealVector& s, double tol) {
  if (s.size() == 0 || s(0) == 0.0) return 0;
  const double cut = tol * s(0);
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > cut) ++r;
  }
  return r;
}

}  // namespace

int numerical_rank(const ComplexMatrix& m, double tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return rank_from_singular_values(svd.singularValues(), tol);
}

ComplexMatrix kernel_basis(const ComplexMatrix& m, double tol) {
  if (m.cols() == 0) return ComplexMatrix(0, 0);
  if (m.rows() == 0) return ComplexMatrix::Identity(m.cols(), m.cols());
  auto svd = full_svd(m);
  const int r = rank_from_singular_values(svd.singularValues(), tol);
  return svd.matrixV().rightCols(m.cols() - r);
}

ComplexMatrix range_basis(const ComplexMatrix& m, double tol) {
  if (m.cols() == 0 || m.rows() == 0) return ComplexMatrix(m.rows(), 0);
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeThinU);
  const int r = rank_from_singular_values(svd.singularValues(), tol);
  return svd.matrixU().leftCols(r);
}

ComplexMatrix orthogonal_complement(const ComplexMatrix& basis, int dim) {
  if (basis.cols() == 0) return ComplexMatrix::Identity(dim, dim);
  // Left singular vectors beyond the rank span the complement.
  Eigen::JacobiSVD<ComplexMatrix> svd(basis, Eigen::ComputeFullU);
  return svd.matrixU().rightCols(dim - basis.cols());
}

double max_principal_angle(const ComplexMatrix& q1, const ComplexMatrix& q2) {
  if (q1.cols() != q2.cols()) return std::numbers::pi / 2;
  if (q1.cols() == 0) return 0.0;
  // Sines of the principal angles are the singular values of (I - Q1 Q1*) Q2;
  // the sine route stays accurate for tiny angles where acos does not.
  const ComplexMatrix residual = q2 - q1 * (q1.adjoint() * q2);
  const double s = std::min(1.0, spectral_norm(residual));
  return std::asin(s);
}

double spectral_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues()(0);
}

double condition_number(const ComplexMatrix& m) {
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0) return 1.0;
  const double smin = s(s.size() - 1);
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / smin;
}

ComplexVector vec(const ComplexMatrix& m) {
  return Eigen::Map<const ComplexVector>(m.data(), m.size());
}

ComplexMatrix unvec(const ComplexVector& v, int rows, int cols) {
  if (v.size() != static_cast<Eigen::Index>(rows) * cols) {
    throw Error(ErrorKind::Dimension, "unvec: length mismatch");
  }
  return Eigen::Map<const ComplexMatrix>(v.data(), rows, cols);
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

RealVector hermitian_eigenvalues(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(0.5 * (m + m.adjoint()),
                                                   Eigen::EigenvaluesOnly);
  return eig.eigenvalues();
}

}  // namespace freeball
