#include "freeball/rng.hpp"

#include <cmath>

namespace freeball {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t root, std::string_view stream, std::uint64_t index) {
  return splitmix64(splitmix64(root ^ fnv1a(stream)) + index);
}

Engine make_engine(std::uint64_t root, std::string_view stream, std::uint64_t index) {
  return Engine(derive_seed(root, stream, index));
}

double uniform(Engine& rng, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  return dist(rng);
}

ComplexMatrix random_gaussian(Engine& rng, int rows, int cols) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  ComplexMatrix m(rows, cols);
  for (int c = 0; c < cols; ++c) {
    for (int r = 0; r < rows; ++r) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(r, c) = Complex(re, im);
    }
  }
  return m;
}

ComplexMatrix random_unitary(Engine& rng, int n) {
  Eigen::HouseholderQR<ComplexMatrix> qr(random_gaussian(rng, n, n));
  return qr.householderQ() * ComplexMatrix::Identity(n, n);
}

ComplexMatrix random_well_conditioned(Engine& rng, int n, double cond) {
  const ComplexMatrix u = random_unitary(rng, n);
  const ComplexMatrix v = random_unitary(rng, n);
  Eigen::VectorXcd s(n);
  for (int i = 0; i < n; ++i) s(i) = uniform(rng, 1.0, cond);
  if (n > 0) s(0) = 1.0;
  return u * s.asDiagonal() * v.adjoint();
}

}  // namespace freeball
