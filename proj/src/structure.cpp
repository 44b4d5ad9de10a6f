#include "freeball/structure.hpp"

#include <algorithm>
#include <cmath>

namespace freeball {

MatSpanSubspace MatSpanSubspace::full(int d) {
  MatSpanSubspace v;
  v.d = d;
  v.level1_basis = ComplexMatrix::Identity(d, d);
  v.relations = ComplexMatrix(d, 0);
  return v;
}

MatSpanSubspace MatSpanSubspace::spanned_by(const ComplexMatrix& vectors, double tol) {
  MatSpanSubspace v;
  v.d = static_cast<int>(vectors.rows());
  v.level1_basis = range_basis(vectors, tol);
  // alpha^T b = 0 for all b  <=>  conj(alpha) is orthogonal to span(b).
  v.relations = orthogonal_complement(v.level1_basis, v.d).conjugate();
  return v;
}

MatrixTuple MatSpanSubspace::project(const MatrixTuple& z) const {
  if (z.d() != d) throw Error(ErrorKind::Dimension, "project: d mismatch");
  const ComplexMatrix p = level1_basis * level1_basis.adjoint();
  std::vector<ComplexMatrix> out;
  out.reserve(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    ComplexMatrix c = ComplexMatrix::Zero(z.n(), z.n());
    for (int j = 0; j < d; ++j) c += p(i, j) * z[j];
    out.push_back(std::move(c));
  }
  return MatrixTuple(std::move(out));
}

double MatSpanSubspace::distance(const MatrixTuple& z) const { return (z - project(z)).norm(); }

namespace {

ComplexMatrix coordinate_matrix(const MatrixTuple& x) {
  const int n2 = x.n() * x.n();
  ComplexMatrix m(n2, x.d());
  for (int j = 0; j < x.d(); ++j) m.col(j) = vec(x[j]);
  return m;
}

}  // namespace

LinearRelations linear_relations(const MatrixTuple& x, double tol) {
  LinearRelations rel;
  rel.d = x.d();
  rel.basis = kernel_basis(coordinate_matrix(x), tol);
  return rel;
}

MatSpanSubspace mat_span(const std::vector<MatrixTuple>& points, double tol) {
  if (points.empty()) throw Error(ErrorKind::Degenerate, "mat_span: empty point set");
  const int d = points.front().d();
  Eigen::Index rows = 0;
  for (const auto& p : points) {
    if (p.d() != d) throw Error(ErrorKind::Dimension, "mat_span: points disagree on d");
    rows += static_cast<Eigen::Index>(p.n()) * p.n();
  }
  ComplexMatrix stacked(rows, d);
  Eigen::Index offset = 0;
  for (const auto& p : points) {
    const ComplexMatrix m = coordinate_matrix(p);
    stacked.middleRows(offset, m.rows()) = m;
    offset += m.rows();
  }
  MatSpanSubspace v;
  v.d = d;
  v.relations = kernel_basis(stacked, tol);
  v.level1_basis = v.relations.cols() == 0 ? ComplexMatrix(ComplexMatrix::Identity(d, d))
                                           : kernel_basis(v.relations.transpose(), tol);
  return v;
}

bool in_mat_span(const MatSpanSubspace& v, const MatrixTuple& z, double tol) {
  if (z.d() != v.d) throw Error(ErrorKind::Dimension, "in_mat_span: d mismatch");
  const double bound = tol * std::max(1.0, z.norm());
  for (Eigen::Index r = 0; r < v.relations.cols(); ++r) {
    ComplexMatrix combo = ComplexMatrix::Zero(z.n(), z.n());
    for (int j = 0; j < v.d; ++j) combo += v.relations(j, r) * z[j];
    if (combo.norm() > bound) return false;
  }
  return true;
}

namespace {

// Appends candidate to the orthonormal basis when its component outside the
// current span exceeds threshold. Two Gram-Schmidt passes.
bool extend_basis(ComplexMatrix& basis, ComplexVector candidate, double threshold) {
  for (int pass = 0; pass < 2; ++pass) {
    if (basis.cols() > 0) candidate -= basis * (basis.adjoint() * candidate);
  }
  const double r = candidate.norm();
  if (!(r > threshold)) return false;
  basis.conservativeResize(candidate.size(), basis.cols() + 1);
  basis.col(basis.cols() - 1) = candidate / r;
  return true;
}

double max_coordinate_norm(const MatrixTuple& x) {
  double s = 0.0;
  for (const auto& c : x.coords()) s = std::max(s, c.norm());
  return s;
}

}  // namespace

ComplexMatrix algebra_basis(const MatrixTuple& x, double tol) {
  const int n = x.n();
  const int n2 = n * n;
  ComplexMatrix basis(n2, 0);
  const double scale = max_coordinate_norm(x);
  if (scale == 0.0) return basis;
  std::vector<Eigen::Index> frontier;
  for (const auto& c : x.coords()) {
    if (extend_basis(basis, vec(c) / scale, tol)) frontier.push_back(basis.cols() - 1);
  }
  // Words grow by left multiplication; only the newest basis elements need
  // to be multiplied each round.
  for (int length = 2; length <= n2 && !frontier.empty() && basis.cols() < n2; ++length) {
    std::vector<Eigen::Index> next;
    for (Eigen::Index idx : frontier) {
      const ComplexMatrix b = unvec(basis.col(idx), n, n);
      for (const auto& c : x.coords()) {
        if (extend_basis(basis, vec(c * b) / scale, tol)) next.push_back(basis.cols() - 1);
        if (basis.cols() == n2) break;
      }
      if (basis.cols() == n2) break;
    }
    frontier = std::move(next);
  }
  return basis;
}

GenericityResult is_generic(const MatrixTuple& x, double tol) {
  GenericityResult out;
  if (x.n() == 1) {
    out.generic = max_coordinate_norm(x) > 0.0;
    out.algebra_dim = out.generic ? 1 : 0;
    return out;
  }
  out.algebra_dim = static_cast<int>(algebra_basis(x, tol).cols());
  out.generic = out.algebra_dim == x.n() * x.n();
  return out;
}

ComplexMatrix cyclic_subspace(const MatrixTuple& x, const ComplexVector& v, double tol) {
  const int n = x.n();
  ComplexMatrix basis(n, 0);
  if (!extend_basis(basis, v / v.norm(), 0.5)) return basis;
  double scale = 0.0;
  for (const auto& c : x.coords()) scale = std::max(scale, spectral_norm(c));
  if (scale == 0.0) return basis;
  std::vector<Eigen::Index> frontier{0};
  while (!frontier.empty() && basis.cols() < n) {
    std::vector<Eigen::Index> next;
    for (Eigen::Index idx : frontier) {
      const ComplexVector b = basis.col(idx);
      for (const auto& c : x.coords()) {
        if (extend_basis(basis, c * b / scale, tol)) next.push_back(basis.cols() - 1);
      }
    }
    frontier = std::move(next);
  }
  return basis;
}

namespace {

double invariance_residual(const MatrixTuple& x, const ComplexMatrix& w) {
  double worst = 0.0;
  for (const auto& c : x.coords()) {
    const ComplexMatrix image = c * w;
    worst = std::max(worst, (image - w * (w.adjoint() * image)).norm());
  }
  return worst;
}

bool proper(const ComplexMatrix& w, int n) { return w.cols() > 0 && w.cols() < n; }

// Candidate vectors: eigenvectors of r plus nullspace vectors of r - lambda.
std::vector<ComplexVector> eigen_candidates(const ComplexMatrix& r) {
  const int n = static_cast<int>(r.rows());
  Eigen::ComplexEigenSolver<ComplexMatrix> eig(r);
  std::vector<ComplexVector> out;
  for (int i = 0; i < n; ++i) out.push_back(eig.eigenvectors().col(i));
  const double scale = std::max(1e-300, spectral_norm(r));
  for (int i = 0; i < n; ++i) {
    const ComplexMatrix shifted = r - eig.eigenvalues()(i) * ComplexMatrix::Identity(n, n);
    const ComplexMatrix k = kernel_basis(shifted / scale, 1e-7);
    for (Eigen::Index c = 0; c < k.cols(); ++c) out.push_back(k.col(c));
  }
  return out;
}

}  // namespace

std::optional<ComplexMatrix> find_invariant_subspace(const MatrixTuple& x, double tol, Engine& rng,
                                                     int retries) {
  const int n = x.n();
  if (n == 1) return std::nullopt;
  const double scale = max_coordinate_norm(x);
  const double accept = 1e-8 * std::max(scale, 1e-300);
  if (scale == 0.0) {
    ComplexMatrix e = ComplexMatrix::Zero(n, 1);
    e(0, 0) = 1.0;
    return e;
  }
  const ComplexMatrix algebra = algebra_basis(x, tol);
  if (algebra.cols() == n * n) return std::nullopt;
  const MatrixTuple xt = transpose_tuple(x);
  for (int attempt = 0; attempt < retries; ++attempt) {
    const ComplexVector c = random_gaussian(rng, static_cast<int>(algebra.cols()), 1);
    const ComplexMatrix r = unvec(algebra * c, n, n);
    for (const auto& v : eigen_candidates(r)) {
      const ComplexMatrix w = cyclic_subspace(x, v, tol);
      if (proper(w, n) && invariance_residual(x, w) <= accept) return w;
    }
    // Dual route: an invariant subspace U of the transposed tuple yields the
    // X-invariant subspace ker(U^T).
    for (const auto& u : eigen_candidates(r.transpose())) {
      const ComplexMatrix uu = cyclic_subspace(xt, u, tol);
      if (!proper(uu, n)) continue;
      const ComplexMatrix w = kernel_basis(uu.transpose(), 1e-9);
      if (proper(w, n) && invariance_residual(x, w) <= accept) return w;
    }
  }
  return std::nullopt;
}

namespace {

struct Partial {
  JHDecomposition jh;
  bool complete = true;
};

Partial decompose(const MatrixTuple& x, const ToleranceConfig& tol, Engine& rng) {
  const int n = x.n();
  Partial out;
  out.jh.similarity = ComplexMatrix::Identity(n, n);
  if (n == 1 || is_generic(x, tol.rank_tol).generic) {
    out.jh.block_sizes = {n};
    out.jh.constituents = {x};
    return out;
  }
  const auto w = find_invariant_subspace(x, tol.rank_tol, rng);
  if (!w) {
    out.complete = false;
    out.jh.block_sizes = {n};
    out.jh.constituents = {x};
    return out;
  }
  const int k = static_cast<int>(w->cols());
  ComplexMatrix q(n, n);
  q.leftCols(k) = *w;
  q.rightCols(n - k) = orthogonal_complement(*w, n);
  std::vector<ComplexMatrix> top;
  std::vector<ComplexMatrix> bottom;
  for (const auto& c : x.coords()) {
    const ComplexMatrix y = q.adjoint() * c * q;
    top.push_back(y.topLeftCorner(k, k));
    bottom.push_back(y.bottomRightCorner(n - k, n - k));
  }
  Partial upper = decompose(MatrixTuple(std::move(top)), tol, rng);
  Partial lower = decompose(MatrixTuple(std::move(bottom)), tol, rng);
  ComplexMatrix inner = ComplexMatrix::Zero(n, n);
  inner.topLeftCorner(k, k) = upper.jh.similarity;
  inner.bottomRightCorner(n - k, n - k) = lower.jh.similarity;
  out.jh.similarity = q * inner;
  out.jh.block_sizes = upper.jh.block_sizes;
  out.jh.block_sizes.insert(out.jh.block_sizes.end(), lower.jh.block_sizes.begin(),
                            lower.jh.block_sizes.end());
  out.jh.constituents = upper.jh.constituents;
  out.jh.constituents.insert(out.jh.constituents.end(), lower.jh.constituents.begin(),
                             lower.jh.constituents.end());
  out.complete = upper.complete && lower.complete;
  return out;
}

}  // namespace

JHDecomposition jordan_holder(const MatrixTuple& x, const ToleranceConfig& tol, std::uint64_t seed) {
  Engine rng = make_engine(seed, "jordan_holder");
  Partial result = decompose(x, tol, rng);
  if (!result.complete) {
    throw IncompleteDecompositionError(
        "jordan_holder: retry budget exhausted before every block was irreducible",
        std::move(result.jh));
  }
  return std::move(result.jh);
}

double subdiagonal_residual(const MatrixTuple& x, const JHDecomposition& jh) {
  const ComplexMatrix s_inv = jh.similarity.inverse();
  double worst = 0.0;
  for (const auto& c : x.coords()) {
    const ComplexMatrix y = s_inv * c * jh.similarity;
    int offset = 0;
    for (int size : jh.block_sizes) {
      const int below = x.n() - offset - size;
      if (below > 0) worst = std::max(worst, y.block(offset + size, offset, below, size).norm());
      offset += size;
    }
  }
  return worst;
}

}  // namespace freeball
