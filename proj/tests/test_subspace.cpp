#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <stdexcept>
#include <vector>

#include "cdc/field.hpp"
#include "cdc/matrix.hpp"
#include "cdc/subspace.hpp"
#include "test_util.hpp"

using namespace cdc;
using testutil::kPropertyIters;
using testutil::make_rng;
using testutil::random_full_rank;
using testutil::random_mat;
using testutil::random_subspace;
using testutil::uniform_int;

TEST_CASE("subspaces have one canonical representative per row space") {
  auto rng = make_rng(0x5eed10);
  for (int it = 0; it < kPropertyIters; ++it) {
    const FieldContext& f = FieldContext::get(testutil::small_field_orders()[it % 7]);
    int v = uniform_int(rng, 1, 7);
    int k = uniform_int(rng, 1, v);
    Subspace s = random_subspace(f, v, k, rng);
    REQUIRE(s.dim() == k);
    REQUIRE(s.ambient() == v);
    REQUIRE(s.basis() == rref(s.basis()));  // canonical form
    REQUIRE(s.pivots().weight == k);

    // A different basis of the same row space canonicalizes identically.
    Mat change = random_full_rank(f, k, k, rng);
    Subspace t = Subspace::from_span(mul(change, s.basis()));
    REQUIRE(s == t);
    REQUIRE_FALSE(s < t);
    REQUIRE_FALSE(t < s);
  }
}

TEST_CASE("span of a deficient matrix drops to its rank; full-rank intake refuses it") {
  const FieldContext& f = FieldContext::get(2);
  Mat dup = Mat::from_rows(f, {{1, 0, 1}, {1, 0, 1}});
  CHECK(Subspace::from_span(dup).dim() == 1);
  CHECK_THROWS_AS(Subspace::from_full_rank(dup), std::invalid_argument);
  CHECK(Subspace::from_span(Mat(f, 2, 3)).dim() == 0);  // zero matrix spans nothing
}

TEST_CASE("subspace distance: dimension formula and metric axioms") {
  auto rng = make_rng(0x5eed11);
  for (int it = 0; it < kPropertyIters; ++it) {
    const FieldContext& f = FieldContext::get(it % 2 == 0 ? 2 : 3);
    int v = uniform_int(rng, 2, 7);
    Subspace a = random_subspace(f, v, uniform_int(rng, 1, v), rng);
    Subspace b = random_subspace(f, v, uniform_int(rng, 1, v), rng);
    Subspace c = random_subspace(f, v, uniform_int(rng, 1, v), rng);

    int dim_sum = rank(vconcat(a.basis(), b.basis()));  // dim(A + B)
    REQUIRE(subspace_distance(a, b) == 2 * dim_sum - a.dim() - b.dim());

    REQUIRE(subspace_distance(a, b) == subspace_distance(b, a));
    REQUIRE(subspace_distance(a, a) == 0);
    if (!(a == b)) REQUIRE(subspace_distance(a, b) > 0);
    REQUIRE(subspace_distance(a, c) <=
            subspace_distance(a, b) + subspace_distance(b, c));
  }
  Subspace u2 = random_subspace(FieldContext::get(2), 4, 2, rng);
  Subspace u3 = random_subspace(FieldContext::get(2), 5, 2, rng);
  CHECK_THROWS_AS(subspace_distance(u2, u3), std::invalid_argument);  // ambient mismatch
}

TEST_CASE("pivot Hamming distance never exceeds the subspace distance") {
  auto rng = make_rng(0x5eed12);
  for (int it = 0; it < kPropertyIters; ++it) {
    const FieldContext& f = FieldContext::get(testutil::small_field_orders()[it % 7]);
    int v = uniform_int(rng, 2, 7);
    Subspace a = random_subspace(f, v, uniform_int(rng, 1, v), rng);
    Subspace b = random_subspace(f, v, uniform_int(rng, 1, v), rng);
    int lb = pivot_distance_lower_bound(a, b);
    REQUIRE(lb == hamming_distance(a.pivots().bits, b.pivots().bits));
    REQUIRE(lb <= subspace_distance(a, b));
  }
}

TEST_CASE("rank distance is a metric on equal shapes") {
  auto rng = make_rng(0x5eed13);
  for (int it = 0; it < kPropertyIters; ++it) {
    const FieldContext& f = FieldContext::get(testutil::small_field_orders()[it % 7]);
    int rows = uniform_int(rng, 1, 5);
    int cols = uniform_int(rng, 1, 5);
    Mat a = random_mat(f, rows, cols, rng);
    Mat b = random_mat(f, rows, cols, rng);
    Mat c = random_mat(f, rows, cols, rng);
    REQUIRE(rank_distance(a, b) == rank(sub(a, b)));
    REQUIRE(rank_distance(a, b) == rank_distance(b, a));
    REQUIRE(rank_distance(a, a) == 0);
    if (!(a == b)) REQUIRE(rank_distance(a, b) > 0);
    REQUIRE(rank_distance(a, c) <= rank_distance(a, b) + rank_distance(b, c));
  }
}

TEST_CASE("orthogonal complement: dimensions, involution, distance invariance") {
  auto rng = make_rng(0x5eed14);
  for (int it = 0; it < kPropertyIters; ++it) {
    const FieldContext& f = FieldContext::get(testutil::small_field_orders()[it % 7]);
    int v = uniform_int(rng, 2, 7);
    Subspace a = random_subspace(f, v, uniform_int(rng, 1, v - 1), rng);
    Subspace b = random_subspace(f, v, uniform_int(rng, 1, v - 1), rng);

    Subspace ca = complement(a);
    REQUIRE(ca.ambient() == v);
    REQUIRE(ca.dim() == v - a.dim());
    REQUIRE(complement(ca) == a);  // involution

    // Every basis vector of the complement annihilates every vector of a.
    for (int i = 0; i < ca.dim(); ++i)
      for (int j = 0; j < a.dim(); ++j) {
        int dot = 0;
        for (int c = 0; c < v; ++c)
          dot = f.add(dot, f.mul(ca.basis().at(i, c), a.basis().at(j, c)));
        REQUIRE(dot == 0);
      }

    REQUIRE(subspace_distance(ca, complement(b)) == subspace_distance(a, b));
  }
}

TEST_CASE("codeword containers sort, deduplicate and keep their claims") {
  const FieldContext& f = FieldContext::get(2);
  auto rng = make_rng(0x5eed15);
  Subspace s1 = random_subspace(f, 5, 2, rng);
  Subspace s2 = random_subspace(f, 5, 2, rng);
  while (s2 == s1) s2 = random_subspace(f, 5, 2, rng);

  CDCCode code(2, 5, 2, 2, {s2, s1, s2});
  CHECK(code.size() == 2);
  CHECK(code.words()[0] < code.words()[1]);
  CHECK(code.q() == 2);
  CHECK(code.v() == 5);
  CHECK(code.k() == 2);
  CHECK(code.d_claimed() == 2);

  Mat m1 = random_mat(f, 2, 3, rng);
  Mat m2 = random_mat(f, 2, 3, rng);
  while (m2 == m1) m2 = random_mat(f, 2, 3, rng);
  RankCode rc(2, 2, 3, 1, std::nullopt, {m2, m1, m1});
  CHECK(rc.size() == 2);
  CHECK(rc.words()[0] < rc.words()[1]);
  CHECK_FALSE(rc.u_claimed().has_value());
  RankCode capped(2, 2, 3, 1, 1, {m1});
  CHECK(capped.u_claimed() == 1);
}
