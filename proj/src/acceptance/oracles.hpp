#pragma once

// Independent reference computations used by the unit and acceptance
// suites. None of these route through the code path they check.

#include <cstdint>

#include "freeball/nc_point.hpp"
#include "freeball/rng.hpp"

namespace freeball::oracle {

/// Phi_X assembled column by column from T -> sum X_j T X_j^*, realified to
/// a 2n^2 x 2n^2 real matrix, and solved with the real nonsymmetric
/// eigensolver. Returns the largest eigenvalue modulus.
double realified_spectral_radius(const MatrixTuple& x);

/// Orthonormal basis of span{ (T(X_1), ..., T(X_d)) : T random linear map
/// on M_n }, vectorized coordinate-major, from `samples` seeded draws.
ComplexMatrix random_operator_span(const MatrixTuple& x, int samples, std::uint64_t seed);

/// Truncated Szego sum by explicit enumeration of all words of length <= N.
ComplexMatrix szego_by_enumeration(const MatrixTuple& z, const MatrixTuple& w,
                                   const ComplexMatrix& t, int max_length);

/// Random tuple with the given row norm.
MatrixTuple random_tuple(Engine& rng, int d, int n, double row_norm_target);

}  // namespace freeball::oracle
