#include "freeball/nc_point.hpp"

#include <string>

namespace freeball {

MatrixTuple::MatrixTuple(std::vector<ComplexMatrix> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw Error(ErrorKind::Dimension, "matrix tuple needs d >= 1");
  n_ = static_cast<int>(coords_.front().rows());
  if (n_ < 1) throw Error(ErrorKind::Dimension, "matrix tuple needs n >= 1");
  for (const auto& c : coords_) {
    if (c.rows() != n_ || c.cols() != n_) {
      throw Error(ErrorKind::Dimension, "matrix tuple coordinates must all be " +
                                            std::to_string(n_) + "x" + std::to_string(n_));
    }
    require_finite(c, "matrix tuple");
  }
}

MatrixTuple MatrixTuple::zero(int d, int n) {
  return MatrixTuple(std::vector<ComplexMatrix>(static_cast<std::size_t>(d),
                                                ComplexMatrix::Zero(n, n)));
}

MatrixTuple MatrixTuple::scalar(std::span<const Complex> alpha, int n) {
  std::vector<ComplexMatrix> coords;
  coords.reserve(alpha.size());
  for (Complex a : alpha) coords.push_back(a * ComplexMatrix::Identity(n, n));
  return MatrixTuple(std::move(coords));
}

MatrixTuple MatrixTuple::scalar(const ComplexVector& alpha, int n) {
  return scalar(std::span<const Complex>(alpha.data(), static_cast<std::size_t>(alpha.size())), n);
}

ComplexMatrix MatrixTuple::row_block() const {
  ComplexMatrix block(n_, static_cast<Eigen::Index>(n_) * d());
  for (int j = 0; j < d(); ++j) block.middleCols(static_cast<Eigen::Index>(j) * n_, n_) = coords_[j];
  return block;
}

double MatrixTuple::norm() const {
  double s = 0.0;
  for (const auto& c : coords_) s += c.squaredNorm();
  return std::sqrt(s);
}

MatrixTuple MatrixTuple::operator+(const MatrixTuple& other) const {
  if (other.d() != d() || other.n() != n()) throw Error(ErrorKind::Dimension, "tuple shape mismatch");
  std::vector<ComplexMatrix> out;
  out.reserve(coords_.size());
  for (int j = 0; j < d(); ++j) out.push_back(coords_[j] + other[j]);
  return MatrixTuple(std::move(out));
}

MatrixTuple MatrixTuple::operator-(const MatrixTuple& other) const {
  return *this + other * Complex(-1.0);
}

MatrixTuple MatrixTuple::operator*(Complex s) const {
  std::vector<ComplexMatrix> out;
  out.reserve(coords_.size());
  for (const auto& c : coords_) out.push_back(s * c);
  return MatrixTuple(std::move(out));
}

TangentTuple::TangentTuple(std::vector<ComplexMatrix> blocks) : blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw Error(ErrorKind::Dimension, "tangent tuple needs d >= 1");
  rows_ = static_cast<int>(blocks_.front().rows());
  cols_ = static_cast<int>(blocks_.front().cols());
  for (const auto& b : blocks_) {
    if (b.rows() != rows_ || b.cols() != cols_) {
      throw Error(ErrorKind::Dimension, "tangent tuple blocks must share one shape");
    }
    require_finite(b, "tangent tuple");
  }
}

TangentTuple::TangentTuple(const MatrixTuple& x)
    : TangentTuple(std::vector<ComplexMatrix>(x.coords().begin(), x.coords().end())) {}

TangentTuple TangentTuple::zero(int d, int rows, int cols) {
  return TangentTuple(std::vector<ComplexMatrix>(static_cast<std::size_t>(d),
                                                 ComplexMatrix::Zero(rows, cols)));
}

double TangentTuple::norm() const {
  double s = 0.0;
  for (const auto& b : blocks_) s += b.squaredNorm();
  return std::sqrt(s);
}

MatrixTuple TangentTuple::as_point() const {
  return MatrixTuple(std::vector<ComplexMatrix>(blocks_.begin(), blocks_.end()));
}

namespace {

ComplexVector stack(std::span<const ComplexMatrix> blocks) {
  Eigen::Index block = blocks.front().size();
  ComplexVector v(block * static_cast<Eigen::Index>(blocks.size()));
  for (std::size_t j = 0; j < blocks.size(); ++j) {
    v.segment(static_cast<Eigen::Index>(j) * block, block) = vec(blocks[j]);
  }
  return v;
}

std::vector<ComplexMatrix> unstack(const ComplexVector& v, int d, int rows, int cols) {
  const Eigen::Index block = static_cast<Eigen::Index>(rows) * cols;
  if (v.size() != block * d) throw Error(ErrorKind::Dimension, "unvectorize: length mismatch");
  std::vector<ComplexMatrix> out;
  out.reserve(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) out.push_back(unvec(v.segment(j * block, block), rows, cols));
  return out;
}

}  // namespace

ComplexVector vectorize(const MatrixTuple& x) { return stack(x.coords()); }
ComplexVector vectorize(const TangentTuple& z) { return stack(z.blocks()); }

MatrixTuple unvectorize_point(const ComplexVector& v, int d, int n) {
  return MatrixTuple(unstack(v, d, n, n));
}

TangentTuple unvectorize_tangent(const ComplexVector& v, int d, int rows, int cols) {
  return TangentTuple(unstack(v, d, rows, cols));
}

double row_norm(const MatrixTuple& x) { return spectral_norm(x.row_block()); }

bool in_ball(const MatrixTuple& x, double tol) { return row_norm(x) < 1.0 - tol; }

MatrixTuple direct_sum(const MatrixTuple& x, const MatrixTuple& y) {
  if (x.d() != y.d()) {
    throw Error(ErrorKind::Dimension, "direct_sum: d mismatch (" + std::to_string(x.d()) +
                                          " vs " + std::to_string(y.d()) + ")");
  }
  const int n = x.n();
  const int m = y.n();
  std::vector<ComplexMatrix> out;
  out.reserve(static_cast<std::size_t>(x.d()));
  for (int j = 0; j < x.d(); ++j) {
    ComplexMatrix b = ComplexMatrix::Zero(n + m, n + m);
    b.topLeftCorner(n, n) = x[j];
    b.bottomRightCorner(m, m) = y[j];
    out.push_back(std::move(b));
  }
  return MatrixTuple(std::move(out));
}

MatrixTuple conjugate(const MatrixTuple& x, const ComplexMatrix& s) {
  if (s.rows() != x.n() || s.cols() != x.n()) {
    throw Error(ErrorKind::Dimension, "conjugate: similarity has the wrong size");
  }
  const double cond = condition_number(s);
  if (!(cond <= 1e12)) {
    throw Error(ErrorKind::Singular,
                "conjugate: similarity is numerically singular (condition " + std::to_string(cond) + ")");
  }
  Eigen::PartialPivLU<ComplexMatrix> lu(s);
  std::vector<ComplexMatrix> out;
  out.reserve(static_cast<std::size_t>(x.d()));
  for (const auto& c : x.coords()) out.push_back(lu.solve(c * s));
  return MatrixTuple(std::move(out));
}

MatrixTuple transpose_tuple(const MatrixTuple& x) {
  std::vector<ComplexMatrix> out;
  out.reserve(static_cast<std::size_t>(x.d()));
  for (const auto& c : x.coords()) out.push_back(c.transpose());
  return MatrixTuple(std::move(out));
}

ComplexMatrix gram_sum(const MatrixTuple& x) {
  ComplexMatrix g = ComplexMatrix::Zero(x.n(), x.n());
  for (const auto& c : x.coords()) g += c * c.adjoint();
  return g;
}

CoisometryFit is_coisometry_direction(const MatrixTuple& x, double tol) {
  if (x.norm() == 0.0) throw Error(ErrorKind::Degenerate, "is_coisometry_direction: zero tuple");
  const ComplexMatrix g = gram_sum(x);
  CoisometryFit fit;
  fit.scale = g.trace().real() / x.n();
  fit.residual = (g - fit.scale * ComplexMatrix::Identity(x.n(), x.n())).norm();
  fit.is_coisometry_direction = fit.scale > 0.0 && fit.residual <= tol * std::max(1.0, fit.scale);
  return fit;
}

}  // namespace freeball
