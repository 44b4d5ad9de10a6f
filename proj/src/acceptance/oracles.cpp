#include "oracles.hpp"

#include <functional>

namespace freeball::oracle {

double realified_spectral_radius(const MatrixTuple& x) {
  const int n = x.n();
  const int n2 = n * n;
  ComplexMatrix phi(n2, n2);
  for (int c = 0; c < n2; ++c) {
    ComplexMatrix e = ComplexMatrix::Zero(n, n);
    e(c % n, c / n) = 1.0;
    ComplexMatrix image = ComplexMatrix::Zero(n, n);
    for (const auto& xj : x.coords()) image += xj * e * xj.adjoint();
    for (int r = 0; r < n2; ++r) phi(r, c) = image(r % n, r / n);
  }
  Eigen::MatrixXd real(2 * n2, 2 * n2);
  real << phi.real(), -phi.imag(), phi.imag(), phi.real();
  Eigen::EigenSolver<Eigen::MatrixXd> eig(real, false);
  return eig.eigenvalues().cwiseAbs().maxCoeff();
}

ComplexMatrix random_operator_span(const MatrixTuple& x, int samples, std::uint64_t seed) {
  const int n = x.n();
  const int n2 = n * n;
  const int d = x.d();
  Engine rng = make_engine(seed, "oracle.random_operator_span");
  ComplexMatrix images(static_cast<Eigen::Index>(d) * n2, samples);
  for (int s = 0; s < samples; ++s) {
    const ComplexMatrix t = random_gaussian(rng, n2, n2);
    for (int j = 0; j < d; ++j) {
      const ComplexVector v = Eigen::Map<const ComplexVector>(x[j].data(), n2);
      images.col(s).segment(static_cast<Eigen::Index>(j) * n2, n2) = t * v;
    }
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(images, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > 1e-9 * sv(0)) ++rank;
  }
  return svd.matrixU().leftCols(rank);
}

ComplexMatrix szego_by_enumeration(const MatrixTuple& z, const MatrixTuple& w,
                                   const ComplexMatrix& t, int max_length) {
  ComplexMatrix sum = ComplexMatrix::Zero(t.rows(), t.cols());
  std::function<void(int, const ComplexMatrix&, const ComplexMatrix&)> walk =
      [&](int depth, const ComplexMatrix& zw, const ComplexMatrix& ww) {
        sum += zw * t * ww.adjoint();
        if (depth == max_length) return;
        for (int j = 0; j < z.d(); ++j) walk(depth + 1, zw * z[j], ww * w[j]);
      };
  walk(0, ComplexMatrix::Identity(z.n(), z.n()), ComplexMatrix::Identity(w.n(), w.n()));
  return sum;
}

MatrixTuple random_tuple(Engine& rng, int d, int n, double row_norm_target) {
  std::vector<ComplexMatrix> coords;
  for (int j = 0; j < d; ++j) coords.push_back(random_gaussian(rng, n, n));
  MatrixTuple x(std::move(coords));
  return x * Complex(row_norm_target / row_norm(x));
}

}  // namespace freeball::oracle
