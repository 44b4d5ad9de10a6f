#pragma once

// Seed splitting: every random stream is derived from (root seed, operation
// name, index), so adding samples to one stream never shifts another.

#include <cstdint>
#include <random>
#include <string_view>

#include "freeball/matrix_core.hpp"

namespace freeball {

using Engine = std::mt19937_64;

std::uint64_t derive_seed(std::uint64_t root, std::string_view stream, std::uint64_t index);

Engine make_engine(std::uint64_t root, std::string_view stream, std::uint64_t index = 0);

double uniform(Engine& rng, double lo, double hi);

/// Standard complex Gaussian entries (real and imaginary parts N(0, 1/2)).
ComplexMatrix random_gaussian(Engine& rng, int rows, int cols);

/// Haar-ish unitary from the QR factorization of a Gaussian matrix.
ComplexMatrix random_unitary(Engine& rng, int n);

/// U * diag(singular values in [1, cond]) * V*, so condition <= cond.
ComplexMatrix random_well_conditioned(Engine& rng, int n, double cond);

}  // namespace freeball
