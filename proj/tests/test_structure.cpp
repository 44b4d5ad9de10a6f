#include "doctest.h"

#include <cmath>

#include "freeball/cp_perron.hpp"
#include "freeball/structure.hpp"
#include "oracles.hpp"
#include "test_helpers.hpp"

using namespace freeball;
using freeball::testing::mat2;
using freeball::testing::unit;

namespace {

const double kTol = 1e-9;

MatrixTuple fermionic() {
  const double s = 1.0 / std::sqrt(2.0);
  return MatrixTuple({unit(2, 0, 1) * s, unit(2, 1, 0) * s});
}

MatrixTuple commutator() { return MatrixTuple({mat2(0.5, 0, 0, 0), mat2(0, 0.5, 0, 0)}); }

}  // namespace

TEST_CASE("linear relations") {
  CHECK(linear_relations(MatrixTuple::zero(3, 2), kTol).dim() == 3);
  CHECK(linear_relations(fermionic(), kTol).dim() == 0);
  const MatrixTuple x({mat2(1, 2, 3, 4), mat2(2, 4, 6, 8)});
  const LinearRelations l = linear_relations(x, kTol);
  REQUIRE(l.dim() == 1);
  const ComplexVector alpha = l.basis.col(0);
  CHECK(std::abs(2.0 * alpha(0) + 4.0 * alpha(1)) < 1e-12);
  CHECK((alpha(0) * x[0] + alpha(1) * x[1]).norm() < 1e-12);
}

TEST_CASE("mat spans") {
  CHECK(mat_span({fermionic()}, kTol).is_full());
  CHECK(mat_span({commutator()}, kTol).is_full());
  const MatrixTuple x({mat2(1, 2, 3, 4), mat2(2, 4, 6, 8)});
  const MatSpanSubspace v = mat_span({x}, kTol);
  CHECK(v.dim() == 1);
  CHECK(in_mat_span(v, x, 1e-12));
  CHECK_FALSE(in_mat_span(v, fermionic(), 1e-6));
  // Adding a point without the relation fills C^2.
  CHECK(mat_span({x, fermionic()}, kTol).is_full());
  CHECK_THROWS_AS(mat_span({}, kTol), Error);
  CHECK_THROWS_AS(mat_span({x, MatrixTuple::zero(3, 2)}, kTol), Error);
}

TEST_CASE("mat span contains every T-image of the point") {
  Engine rng = make_engine(1, "test.matspan.T");
  const MatrixTuple base = oracle::random_tuple(rng, 2, 3, 0.5);
  const MatrixTuple x({base[0], Complex(0.3, -1.0) * base[0]});
  const MatSpanSubspace v = mat_span({x}, kTol);
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix t = random_gaussian(rng, 9, 9);
    std::vector<ComplexMatrix> image;
    for (int j = 0; j < 2; ++j) image.push_back(unvec(t * vec(x[j]), 3, 3));
    CHECK(in_mat_span(v, MatrixTuple(std::move(image)), 1e-10));
  }
}

TEST_CASE("projection onto V(n)") {
  ComplexMatrix b(2, 1);
  b << 1.0, 1.0;
  const MatSpanSubspace v = MatSpanSubspace::spanned_by(b);
  Engine rng = make_engine(2, "test.project");
  const MatrixTuple z = oracle::random_tuple(rng, 2, 2, 1.0);
  const MatrixTuple p = v.project(z);
  CHECK((p[0] - p[1]).norm() < 1e-14);
  CHECK((v.project(p) - p).norm() < 1e-14);
  CHECK(v.distance(p) < 1e-14);
  CHECK(v.distance(z) == doctest::Approx((z - p).norm()));
}

TEST_CASE("genericity") {
  CHECK(is_generic(fermionic(), kTol).generic);
  CHECK(is_generic(fermionic(), kTol).algebra_dim == 4);
  CHECK_FALSE(is_generic(commutator(), kTol).generic);
  CHECK_FALSE(is_generic(MatrixTuple::zero(2, 3), kTol).generic);
  const Complex one[] = {0.2};
  CHECK(is_generic(MatrixTuple::scalar(one, 1), kTol).generic);
  CHECK_FALSE(is_generic(MatrixTuple::zero(1, 1), kTol).generic);
  // Single generic matrix with distinct eigenvalues generates only a commutative algebra.
  CHECK_FALSE(is_generic(MatrixTuple({mat2(0.1, 0, 0, 0.2)}), kTol).generic);
  Engine rng = make_engine(3, "test.generic");
  for (int n = 2; n <= 5; ++n) CHECK(is_generic(oracle::random_tuple(rng, 2, n, 0.5), kTol).generic);
}

TEST_CASE("genericity is similarity invariant") {
  Engine rng = make_engine(4, "test.generic.similar");
  for (int trial = 0; trial < 10; ++trial) {
    const MatrixTuple x = trial % 2 == 0 ? oracle::random_tuple(rng, 2, 3, 0.5)
                                         : direct_sum(oracle::random_tuple(rng, 2, 1, 0.5),
                                                      oracle::random_tuple(rng, 2, 2, 0.5));
    const ComplexMatrix s = random_well_conditioned(rng, 3, 20.0);
    CHECK(is_generic(x, kTol).generic == is_generic(conjugate(x, s), kTol).generic);
  }
}

TEST_CASE("invariant subspaces") {
  Engine rng = make_engine(5, "test.invariant");
  CHECK_FALSE(find_invariant_subspace(fermionic(), kTol, rng).has_value());
  const auto w = find_invariant_subspace(commutator(), kTol, rng);
  REQUIRE(w.has_value());
  for (int j = 0; j < 2; ++j) {
    const ComplexMatrix image = commutator()[j] * *w;
    CHECK((image - *w * (w->adjoint() * image)).norm() < 1e-12);
  }
  // Only a right-invariant structure: the dual route must find it.
  const MatrixTuple lower({mat2(0.3, 0, 0.4, 0.1), mat2(0.2, 0, -0.3, 0.5)});
  const auto w2 = find_invariant_subspace(lower, kTol, rng);
  REQUIRE(w2.has_value());
  for (int j = 0; j < 2; ++j) {
    const ComplexMatrix image = lower[j] * *w2;
    CHECK((image - *w2 * (w2->adjoint() * image)).norm() < 1e-12);
  }
}

TEST_CASE("cyclic subspaces") {
  ComplexVector e1 = ComplexVector::Zero(2);
  e1(0) = 1.0;
  ComplexVector e2 = ComplexVector::Zero(2);
  e2(1) = 1.0;
  CHECK(cyclic_subspace(commutator(), e1, kTol).cols() == 1);
  CHECK(cyclic_subspace(commutator(), e2, kTol).cols() == 2);
  CHECK(cyclic_subspace(fermionic(), e1, kTol).cols() == 2);
}

TEST_CASE("Jordan-Holder decomposition of direct sums and conjugates") {
  Engine rng = make_engine(6, "test.jh");
  const ToleranceConfig tol;
  for (int trial = 0; trial < 8; ++trial) {
    const MatrixTuple a = oracle::random_tuple(rng, 2, 1 + trial % 2, 0.5);
    const MatrixTuple b = oracle::random_tuple(rng, 2, 2, 0.5);
    const MatrixTuple c = oracle::random_tuple(rng, 2, 1, 0.5);
    MatrixTuple x = direct_sum(direct_sum(a, b), c);
    const int n = x.n();
    // Hide the block structure behind a unitary change of basis and an upper triangular coupling.
    std::vector<ComplexMatrix> coupled(x.coords().begin(), x.coords().end());
    for (auto& m : coupled) m.topRightCorner(a.n(), n - a.n()) += 0.1 * random_gaussian(rng, a.n(), n - a.n());
    const ComplexMatrix u = random_unitary(rng, n);
    x = conjugate(MatrixTuple(std::move(coupled)), u);

    const JHDecomposition jh = jordan_holder(x, tol, 42 + trial);
    int total = 0;
    for (int s : jh.block_sizes) total += s;
    CHECK(total == n);
    CHECK(jh.block_sizes.size() == 3);
    CHECK((jh.similarity.adjoint() * jh.similarity - ComplexMatrix::Identity(n, n)).norm() < 1e-10);
    CHECK(subdiagonal_residual(x, jh) <= 1e-8);
    for (const MatrixTuple& block : jh.constituents) {
      CHECK((block.n() == 1 || is_generic(block, tol.rank_tol).generic));
    }
  }
}

TEST_CASE("Jordan-Holder of a generic point is trivial") {
  const JHDecomposition jh = jordan_holder(fermionic(), {}, 1);
  CHECK(jh.block_sizes == std::vector<int>{2});
}

TEST_CASE("Jordan-Holder examples") {
  const ToleranceConfig tol;
  const MatrixTuple tri({mat2(0.3, 0.2, 0, -0.1), mat2(0, 0.4, 0, 0)});
  const JHDecomposition jh = jordan_holder(tri, tol, 3);
  CHECK(jh.block_sizes == std::vector<int>{1, 1});
  CHECK(subdiagonal_residual(tri, jh) < 1e-12);
  // Constituents are the diagonal entries, in order of the flag.
  CHECK(std::abs(jh.constituents[0][0](0, 0) - Complex(0.3)) < 1e-12);
  CHECK(std::abs(jh.constituents[1][0](0, 0) - Complex(-0.1)) < 1e-12);
  CHECK(jh.constituents[0][1].norm() < 1e-12);

  for (int n = 2; n <= 5; ++n) {
    ComplexMatrix j = ComplexMatrix::Zero(n, n);
    for (int i = 0; i + 1 < n; ++i) j(i, i + 1) = 0.5;
    const JHDecomposition nil = jordan_holder(MatrixTuple({j}), tol, 4);
    CHECK(nil.block_sizes == std::vector<int>(static_cast<std::size_t>(n), 1));
    for (const MatrixTuple& c : nil.constituents) CHECK(c.norm() < 1e-12);
  }
}

TEST_CASE("Jordan-Holder reassembles the tuple") {
  Engine rng = make_engine(7, "test.jh.reassemble");
  const ToleranceConfig tol;
  for (int trial = 0; trial < 5; ++trial) {
    const MatrixTuple x = conjugate(direct_sum(oracle::random_tuple(rng, 2, 2, 0.5), oracle::random_tuple(rng, 2, 2, 0.5)),
                                    random_unitary(rng, 4));
    const JHDecomposition jh = jordan_holder(x, tol, trial);
    const MatrixTuple block = conjugate(x, jh.similarity);
    CHECK((conjugate(block, jh.similarity.inverse()) - x).norm() <= 1e-8 * x.norm());
    CHECK(jh.block_sizes == std::vector<int>{2, 2});
  }
}

TEST_CASE("linear relations are similarity invariant") {
  Engine rng = make_engine(8, "test.relations.similar");
  for (int trial = 0; trial < 10; ++trial) {
    const MatrixTuple base = oracle::random_tuple(rng, 2, 3, 0.5);
    const MatrixTuple x({base[0], base[1], 0.5 * base[0] - Complex(0, 2) * base[1]});
    const ComplexMatrix s = random_well_conditioned(rng, 3, 100.0);
    const LinearRelations a = linear_relations(x, 1e-9);
    const LinearRelations b = linear_relations(conjugate(x, s), 1e-9);
    REQUIRE(a.dim() == 1);
    REQUIRE(b.dim() == 1);
    CHECK(max_principal_angle(a.basis, b.basis) <= 1e-9);
  }
}

TEST_CASE("generic points always admit a Perron pair") {
  Engine rng = make_engine(9, "test.generic.perron");
  for (int trial = 0; trial < 10; ++trial) {
    const MatrixTuple x = oracle::random_tuple(rng, 2, 2 + trial % 3, 0.7);
    REQUIRE(is_generic(x, kTol).generic);
    CHECK_NOTHROW(perron_pair(x));
  }
  const MatrixTuple swap({unit(2, 0, 1), unit(2, 1, 0)});
  CHECK(is_generic(swap, kTol).algebra_dim == 4);
  CHECK(is_generic(MatrixTuple({unit(2, 0, 0), unit(2, 1, 1)}), kTol).algebra_dim == 2);
}
