#pragma once

#include "freeball/nc_point.hpp"
#include "freeball/rng.hpp"

namespace freeball::testing {

inline ComplexMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
  ComplexMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

inline ComplexMatrix unit(int n, int r, int c) {
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  m(r, c) = 1.0;
  return m;
}

inline MatrixTuple random_point(Engine& rng, int d, int n, double target_norm) {
  std::vector<ComplexMatrix> coords;
  for (int j = 0; j < d; ++j) coords.push_back(random_gaussian(rng, n, n));
  MatrixTuple x(std::move(coords));
  return x * Complex(target_norm / row_norm(x));
}

}  // namespace freeball::testing
