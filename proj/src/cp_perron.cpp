#include "freeball/cp_perron.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace freeball {

ComplexMatrix apply_cp(const MatrixTuple& x, const ComplexMatrix& t) {
  if (t.rows() != x.n() || t.cols() != x.n()) {
    throw Error(ErrorKind::Dimension, "apply_cp: T must be " + std::to_string(x.n()) + "x" +
                                          std::to_string(x.n()));
  }
  ComplexMatrix out = ComplexMatrix::Zero(x.n(), x.n());
  for (const auto& c : x.coords()) out += c * t * c.adjoint();
  return out;
}

ComplexMatrix superoperator_matrix(const MatrixTuple& x) {
  const int n2 = x.n() * x.n();
  ComplexMatrix out = ComplexMatrix::Zero(n2, n2);
  // vec(A T B) = (B^T (x) A) vec(T) under column stacking.
  for (const auto& c : x.coords()) out += kron(c.conjugate(), c);
  return out;
}

namespace {

double dense_radius(const MatrixTuple& x, ComplexMatrix* top) {
  const int n = x.n();
  Eigen::ComplexEigenSolver<ComplexMatrix> eig(superoperator_matrix(x), top != nullptr);
  const double r = eig.eigenvalues().cwiseAbs().maxCoeff();
  if (top != nullptr) {
    Eigen::Index k = 0;
    eig.eigenvalues().real().maxCoeff(&k);
    *top = eig.eigenvectors().col(k).reshaped(n, n);
  }
  return r;
}

}  // namespace

double spectral_radius(const MatrixTuple& x) {
  const int n = x.n();
  ComplexMatrix a;
  const double r0 = dense_radius(x, &a);
  if (n == 1 || !(r0 > 0.0)) return r0;

  // The eigensolve of a strongly non-normal superoperator loses digits.
  // Conjugating by the square root of the (approximate) Perron matrix makes
  // the map close to unital, after which a second solve is well conditioned.
  const Complex tr = a.trace();
  if (std::abs(tr) == 0.0) return r0;
  a *= std::conj(tr) / std::abs(tr);
  a = (0.5 * (a + a.adjoint())).eval();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> h(a);
  const Eigen::VectorXd& w = h.eigenvalues();
  const double wmax = w.cwiseAbs().maxCoeff();
  if (!(wmax > 0.0) || w.minCoeff() <= 1e-12 * wmax) return r0;
  const ComplexMatrix s =
      h.eigenvectors() * w.cwiseSqrt().cast<Complex>().asDiagonal() * h.eigenvectors().adjoint();
  const auto lu = s.partialPivLu();
  std::vector<ComplexMatrix> balanced;
  balanced.reserve(x.coords().size());
  for (const auto& c : x.coords()) balanced.push_back(lu.solve(c * s));
  const double r1 = dense_radius(MatrixTuple(std::move(balanced)), nullptr);
  return std::isfinite(r1) ? r1 : r0;
}

namespace {

// Fixes the phase and scale of an eigenmatrix: trace made real positive,
// Hermitized, trace normalized to n.
ComplexMatrix normalize_eigenmatrix(ComplexMatrix a) {
  const int n = static_cast<int>(a.rows());
  Complex tr = a.trace();
  if (std::abs(tr) == 0.0) {
    throw Error(ErrorKind::NumericalFailure, "perron_pair: eigenmatrix has zero trace");
  }
  a *= std::conj(tr) / std::abs(tr);
  a = (0.5 * (a + a.adjoint())).eval();
  return a * (static_cast<double>(n) / a.trace().real());
}

struct Eigenpair {
  double r = 0.0;
  ComplexMatrix a;
  double gap = 1.0;
};

Eigenpair dense_perron(const MatrixTuple& x) {
  const int n = x.n();
  Eigen::ComplexEigenSolver<ComplexMatrix> eig(superoperator_matrix(x));
  const auto& values = eig.eigenvalues();
  // rho itself is an eigenvalue of a positive map, so the largest real part
  // picks it out even when r e^{i theta} shares the modulus.
  Eigen::Index top = 0;
  values.real().maxCoeff(&top);
  Eigenpair out;
  out.r = values(top).real();
  out.a = normalize_eigenmatrix(unvec(eig.eigenvectors().col(top), n, n));
  double gap = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (i != top) gap = std::min(gap, std::abs(values(i) - values(top)));
  }
  out.gap = values.size() == 1 ? 1.0 : gap / std::abs(values(top));
  return out;
}

// Shifted power iteration T -> Phi(T) + sigma T. With sigma >= spectral
// radius, r + sigma strictly dominates every other shifted eigenvalue, so
// peripheral eigenvalues r e^{i theta} cannot stall convergence.
Eigenpair iterative_perron(const MatrixTuple& x, const ToleranceConfig& tol) {
  const int n = x.n();
  const double sigma = spectral_norm(apply_cp(x, ComplexMatrix::Identity(n, n)));
  ComplexMatrix t = ComplexMatrix::Identity(n, n);
  ComplexMatrix image = apply_cp(x, t);
  double r = 0.0;
  const int max_iterations = 200000;
  for (int it = 0; it < max_iterations; ++it) {
    ComplexMatrix next = image + sigma * t;
    next = (0.5 * (next + next.adjoint())).eval();
    t = next * (static_cast<double>(n) / next.trace().real());
    image = apply_cp(x, t);
    r = image.trace().real() / t.trace().real();
    // Eigenvalue error tracks the residual, so stop well below residual_tol.
    if ((image - r * t).norm() <= std::max(1e-5 * tol.residual_tol, 1e-14) * r * t.norm()) break;
  }
  Eigenpair out;
  out.r = r;
  out.a = normalize_eigenmatrix(t);
  // Simplicity of r for irreducible maps is what makes the iteration
  // converge; no separate gap estimate is produced on this path.
  out.gap = 1.0;
  return out;
}

}  // namespace

PerronData perron_pair(const MatrixTuple& x, const ToleranceConfig& tol, PerronMethod method) {
  const double norm = row_norm(x);
  if (!(norm < 1.0)) {
    throw Error(ErrorKind::Domain, "perron_pair: X must be a strict row contraction (row norm " +
                                       std::to_string(norm) + ")");
  }
  const auto generic = is_generic(x, tol.rank_tol);
  if (!generic.generic) {
    Engine rng = make_engine(0, "perron_pair.witness");
    const auto witness = find_invariant_subspace(x, tol.rank_tol, rng);
    throw IrreducibilityError("perron_pair: X is not generic (algebra dimension " +
                                  std::to_string(generic.algebra_dim) + " < " +
                                  std::to_string(x.n() * x.n()) + "), Phi_X is reducible",
                              witness.value_or(ComplexMatrix(x.n(), 0)));
  }
  const bool dense = method == PerronMethod::Dense ||
                     (method == PerronMethod::Automatic && x.n() <= kDensePerronMaxLevel);
  const Eigenpair pair = dense ? dense_perron(x) : iterative_perron(x, tol);

  PerronData out;
  out.iterative = !dense;
  out.r = pair.r;
  out.a = pair.a;
  out.relative_gap = pair.gap;
  if (pair.gap < 1e-14) {
    throw Error(ErrorKind::NumericalFailure, "perron_pair: Perron eigenvalue is numerically repeated");
  }
  out.near_degenerate = pair.gap < 1e-10;
  const RealVector spectrum = hermitian_eigenvalues(out.a);
  out.min_eigenvalue = spectrum.minCoeff();
  if (!(out.min_eigenvalue > 0.0) || !(out.r > 0.0)) {
    throw Error(ErrorKind::NumericalFailure, "perron_pair: eigenmatrix is not positive definite (min eigenvalue " +
                                                 std::to_string(out.min_eigenvalue) + ")");
  }
  out.residual = (apply_cp(x, out.a) - out.r * out.a).norm();
  out.s = hermitian_sqrt(out.a, tol);
  return out;
}

CoisometryNormalization coisometry_normalizer(const MatrixTuple& x, const ToleranceConfig& tol) {
  const PerronData perron = perron_pair(x, tol);
  CoisometryNormalization out{perron.s, perron.r, conjugate(x, perron.s), 0.0};
  const int n = x.n();
  out.residual = (gram_sum(out.normalized) - out.r * ComplexMatrix::Identity(n, n)).norm();
  return out;
}

}  // namespace freeball
