#pragma once

// Linear-algebraic structure of a single tuple: degree-one relations among
// the coordinates, matrix spans, irreducibility (Burnside) and a
// Jordan-Holder style simultaneous block triangularization.

#include <cstdint>
#include <optional>
#include <vector>

#include "freeball/nc_point.hpp"
#include "freeball/rng.hpp"

namespace freeball {

/// L_X = { alpha in C^d : sum_j alpha_j X_j = 0 }, orthonormal basis in columns.
struct LinearRelations {
  int d = 0;
  ComplexMatrix basis;

  int dim() const { return static_cast<int>(basis.cols()); }
};

/// A subspace V(1) of C^d together with the relations cutting it out.
/// V(n) = V(1) (x) M_n is the set of tuples each of whose entry vectors
/// (Z_1[k,l], ..., Z_d[k,l]) lies in V(1).
struct MatSpanSubspace {
  int d = 0;
  ComplexMatrix level1_basis;  ///< d x dim, orthonormal columns
  ComplexMatrix relations;     ///< d x (d - dim): alpha with alpha^T v = 0 on V(1)

  int dim() const { return static_cast<int>(level1_basis.cols()); }
  bool is_full() const { return dim() == d; }

  static MatSpanSubspace full(int d);
  /// Subspace spanned by the given columns (orthonormalized).
  static MatSpanSubspace spanned_by(const ComplexMatrix& vectors, double tol = 1e-9);

  /// Orthogonal projection of Z onto V(n).
  MatrixTuple project(const MatrixTuple& z) const;
  /// Frobenius distance from Z to V(n).
  double distance(const MatrixTuple& z) const;
};

LinearRelations linear_relations(const MatrixTuple& x, double tol);

/// V(1) = annihilator of the relations common to every point. Throws
/// Degenerate on an empty list and Dimension on mixed d.
MatSpanSubspace mat_span(const std::vector<MatrixTuple>& points, double tol);

/// Every relation of V annihilates Z: ||sum alpha_j Z_j||_F <= tol * max(1, ||Z||).
bool in_mat_span(const MatSpanSubspace& v, const MatrixTuple& z, double tol);

struct GenericityResult {
  bool generic = false;
  int algebra_dim = 0;
};

/// Burnside test: grows the span of evaluated words (length >= 1) until it
/// stabilizes; generic iff its dimension is n^2. At n = 1, generic iff X != 0.
GenericityResult is_generic(const MatrixTuple& x, double tol);

/// Orthonormal basis (columns, vectorized) of the span of all words of length >= 1.
ComplexMatrix algebra_basis(const MatrixTuple& x, double tol);

/// Smallest subspace containing v and invariant under every X_j.
ComplexMatrix cyclic_subspace(const MatrixTuple& x, const ComplexVector& v, double tol);

/// A proper common invariant subspace (orthonormal columns), if one is found
/// within the retry budget. Returns nullopt for generic tuples.
std::optional<ComplexMatrix> find_invariant_subspace(const MatrixTuple& x, double tol, Engine& rng,
                                                     int retries = 50);

struct JHDecomposition {
  ComplexMatrix similarity;  ///< S with S^{-1} X_j S block upper triangular
  std::vector<int> block_sizes;
  std::vector<MatrixTuple> constituents;
};

class IncompleteDecompositionError : public Error {
 public:
  IncompleteDecompositionError(const std::string& message, JHDecomposition partial)
      : Error(ErrorKind::IncompleteDecomposition, message), partial_(std::move(partial)) {}

  const JHDecomposition& partial() const { return partial_; }

 private:
  JHDecomposition partial_;
};

/// Recursively splits off invariant subspaces until every diagonal block is
/// generic or 1 x 1. The similarity is unitary.
JHDecomposition jordan_holder(const MatrixTuple& x, const ToleranceConfig& tol, std::uint64_t seed);

/// Largest subdiagonal block norm of S^{-1} X_j S over all j.
double subdiagonal_residual(const MatrixTuple& x, const JHDecomposition& jh);

}  // namespace freeball
