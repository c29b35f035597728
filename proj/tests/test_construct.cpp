#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <vector>

#include "cdc/bigint.hpp"
#include "cdc/bounds.hpp"
#include "cdc/construct.hpp"
#include "cdc/errors.hpp"
#include "cdc/field.hpp"
#include "cdc/matrix.hpp"
#include "cdc/qcount.hpp"
#include "cdc/subspace.hpp"
#include "cdc/verify.hpp"
#include "test_util.hpp"

using namespace cdc;
using testutil::kPropertyIters;
using testutil::make_rng;
using testutil::random_full_rank;
using testutil::random_mat;
using testutil::random_subspace;
using testutil::uniform_int;

namespace {

BigCount ipow(int q, long long e) {
  BigCount r = 1;
  for (long long i = 0; i < e; ++i) r *= q;
  return r;
}

// Random matrix of rank at most `cap` (a product of thin random factors).
Mat random_rank_capped(const FieldContext& f, int rows, int cols, int cap, testutil::Rng& rng) {
  if (cap <= 0) return Mat(f, rows, cols);
  return mul(random_mat(f, rows, cap, rng), random_mat(f, cap, cols, rng));
}

std::set<Subspace> word_set(const CDCCode& c) {
  return std::set<Subspace>(c.words().begin(), c.words().end());
}

}  // namespace

TEST_CASE("the trivial code is the leading-unit-vector subspace") {
  CDCCode c = build_trivial(2, 5, 2, 4);
  REQUIRE(c.size() == 1);
  Mat want = hconcat(Mat::identity(FieldContext::get(2), 2), Mat(FieldContext::get(2), 2, 3));
  CHECK(c.words()[0].basis() == want);
  CHECK(trivial_subspace(2, 5, 2) == c.words()[0]);
}

TEST_CASE("spreads: cardinality, exact distance, point partition") {
  struct Case {
    int q, v, k;
  };
  for (Case c : {Case{2, 4, 2}, Case{2, 6, 2}, Case{2, 6, 3}, Case{2, 8, 2}, Case{2, 8, 4},
                 Case{3, 4, 2}, Case{3, 6, 3}, Case{4, 4, 2}, Case{5, 4, 2}, Case{2, 5, 5}}) {
    CDCCode s = build_spread(c.q, c.v, c.k);
    BigCount want = (ipow(c.q, c.v) - 1) / (ipow(c.q, c.k) - 1);
    REQUIRE(BigCount(s.size()) == want);
    CHECK(s.d_claimed() == 2 * c.k);
    if (s.size() > 1) {
      VerifyReport rep = verify_cdc(s);
      REQUIRE(rep.certified);
      REQUIRE(*rep.min_distance_observed == 2 * c.k);  // trivial intersections exactly
    }
  }
  CHECK(build_spread(2, 21, 3).size() == 299593);  // big ambients stay cheap to build
  CHECK_THROWS_AS(build_spread(2, 5, 2), ConstraintError);
  CHECK_THROWS_AS(build_spread(2, 4, 0), ConstraintError);
}

TEST_CASE("a spread covers every point exactly once") {
  CDCCode s = build_spread(2, 4, 2);
  const FieldContext& f = FieldContext::get(2);
  // Count memberships of all 15 nonzero vectors across the 5 planes.
  int covered = 0;
  for (int code = 1; code < 16; ++code) {
    Mat vec(f, 1, 4);
    for (int c = 0; c < 4; ++c) vec.set(0, c, (code >> c) & 1);
    int members = 0;
    for (const Subspace& w : s.words())
      if (rank(vconcat(w.basis(), vec)) == w.dim()) ++members;
    REQUIRE(members == 1);
    ++covered;
  }
  CHECK(covered == 15);
}

TEST_CASE("lifting a rank-metric code doubles its distance") {
  std::vector<Mat> words = realize_rmc(RmcSpec{RmcSpec::Kind::mrd, 2, 3, 4, 2, 0});
  REQUIRE(words.size() == 256);
  CDCCode lifted = lift_rmc(RankCode(2, 3, 4, 2, std::nullopt, std::move(words)));
  REQUIRE(lifted.size() == 256);
  CHECK(lifted.v() == 7);
  CHECK(lifted.k() == 3);
  CHECK(lifted.d_claimed() == 4);
  for (const Subspace& w : lifted.words())
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) REQUIRE(w.basis().at(i, j) == (i == j ? 1 : 0));
  VerifyReport rep = verify_cdc(lifted);
  REQUIRE(rep.certified);
  REQUIRE(*rep.min_distance_observed == 4);

  CDCCode one = lift_rmc(RankCode(2, 2, 3, 2, std::nullopt, {Mat(FieldContext::get(2), 2, 3)}));
  CHECK(one.size() == 1);
  CHECK(one.words()[0] == trivial_subspace(2, 5, 2));
}

TEST_CASE("complementing preserves cardinality and every pairwise distance") {
  CDCCode s = build_spread(2, 6, 2);
  CDCCode c = complement_code(s);
  REQUIRE(c.size() == s.size());
  CHECK(c.k() == 4);
  CHECK(c.d_claimed() == s.d_claimed());
  for (size_t i = 0; i < s.size(); ++i)
    for (size_t j = i + 1; j < s.size(); ++j)
      REQUIRE(subspace_distance(c.words()[i], c.words()[j]) ==
              subspace_distance(s.words()[i], s.words()[j]));
  // Involution up to word order.
  CHECK(word_set(complement_code(c)) == word_set(s));
}

TEST_CASE("paired-spread products: constant rank and doubled distance") {
  struct Case {
    int q, a, b, u;
  };
  for (Case c : {Case{2, 4, 4, 2}, Case{2, 3, 3, 1}, Case{3, 3, 3, 1}, Case{2, 3, 4, 1},
                 Case{2, 4, 2, 2}}) {
    std::vector<Mat> words = product_rrmc(c.q, c.a, c.b, 2 * c.u, c.u);
    BigCount want = std::min((ipow(c.q, c.a) - 1) / (ipow(c.q, c.u) - 1),
                             (ipow(c.q, c.b) - 1) / (ipow(c.q, c.u) - 1));
    REQUIRE(BigCount(words.size()) == want);
    for (const Mat& w : words) REQUIRE(rank(w) == c.u);
    RankCode code(c.q, c.a, c.b, 2 * c.u, c.u, std::move(words));
    VerifyReport rep = verify_rmc(code);
    REQUIRE(rep.certified);
    if (code.size() > 1) REQUIRE(*rep.min_distance_observed == 2 * c.u);
    CHECK_FALSE(rank_code_structure_violation(code).has_value());
  }
  CHECK(product_rrmc(2, 3, 3, 2, 1).size() == 7);
  CHECK(product_rrmc(3, 3, 3, 2, 1).size() == 13);
  CHECK_THROWS_AS(product_rrmc(2, 5, 4, 4, 2), ConstraintError);  // u does not divide a
  CHECK_THROWS_AS(product_rrmc(2, 4, 4, 5, 2), ConstraintError);  // d above 2u
}

TEST_CASE("two-block linkage reproduces the five frozen single-ambient values") {
  // All five splits of ambient 7, distance 4, dimension 3 over GF(2); the
  // values are 263, 265, 71, 65, 73 and every code verifies exhaustively.
  BoundsEngine eng;
  CDCCode b5 = construct_from_plan(eng.constructible_plan(2, 5, 4, 3));
  REQUIRE(b5.size() == 9);

  const FieldContext& f = FieldContext::get(2);
  CDCCode triv3 = build_trivial(2, 3, 3, 4);
  CDCCode triv4 = build_trivial(2, 4, 3, 4);
  std::vector<Mat> mrd34 = realize_rmc(RmcSpec{RmcSpec::Kind::mrd, 2, 3, 4, 2, 0});   // 256
  std::vector<Mat> mrd33 = realize_rmc(RmcSpec{RmcSpec::Kind::mrd, 2, 3, 3, 2, 0});   // 64
  std::vector<Mat> mrd32 = realize_rmc(RmcSpec{RmcSpec::Kind::mrd, 2, 3, 2, 2, 0});   // 8
  std::vector<Mat> prod33 = product_rrmc(2, 3, 3, 2, 1);                               // 7
  std::vector<Mat> prod34 = product_rrmc(2, 3, 4, 2, 1);                               // 7
  std::vector<Mat> zero32 = {Mat(f, 3, 2)};
  std::vector<Mat> zero33 = {Mat(f, 3, 3)};
  std::vector<Mat> zero34 = {Mat(f, 3, 4)};

  struct Split {
    int r, s, t;
    const CDCCode* A;
    const CDCCode* B;
    const std::vector<Mat>* M;
    const std::vector<Mat>* R;
    size_t want;
  };
  const Split splits[] = {
      {3, 4, 0, &triv3, &triv3, &mrd34, &prod33, 263},
      {3, 4, 1, &triv3, &b5, &mrd34, &zero32, 265},
      {4, 3, 0, &triv4, &triv3, &mrd33, &prod34, 71},
      {4, 3, 1, &triv4, &triv4, &mrd33, &zero33, 65},
      {5, 2, 1, &b5, &triv3, &mrd32, &zero34, 73},
  };
  for (const Split& sp : splits) {
    CDCCode code = construct_generalized_linkage(2, 4, 3, sp.r, sp.s, sp.t, *sp.A, *sp.B, *sp.M,
                                                 *sp.R);
    CAPTURE(sp.r);
    CAPTURE(sp.s);
    CAPTURE(sp.t);
    REQUIRE(code.size() == sp.want);
    REQUIRE(code.size() == sp.A->size() * sp.M->size() + sp.R->size() * sp.B->size());
    REQUIRE(code.v() == 7);
    VerifyReport rep = verify_cdc(code);
    REQUIRE(rep.certified);
    REQUIRE(*rep.min_distance_observed == 4);
  }
}

TEST_CASE("identity-first-block specialization equals the directly assembled union") {
  // First code trivial on r = k columns, t = 0: the output must be exactly
  // {rowspace(I_k | M_i)} united with {rowspace(R_j | basis(B_w))}.
  const FieldContext& f = FieldContext::get(2);
  CDCCode triv3 = build_trivial(2, 3, 3, 4);
  CDCCode triv4 = build_trivial(2, 4, 3, 4);
  std::vector<Mat> m34 = realize_rmc(RmcSpec{RmcSpec::Kind::mrd, 2, 3, 4, 2, 0});
  std::vector<Mat> r33 = product_rrmc(2, 3, 3, 2, 1);

  CDCCode got = construct_generalized_linkage(2, 4, 3, 3, 4, 0, triv3, triv4, m34, r33);
  REQUIRE(got.size() == 256 + 7 * 1);

  std::set<Subspace> want;
  Mat id = Mat::identity(f, 3);
  for (const Mat& m : m34) want.insert(Subspace::from_span(hconcat(id, m)));
  for (const Mat& r : r33)
    for (const Subspace& b : triv4.words()) want.insert(Subspace::from_span(hconcat(r, b.basis())));
  CHECK(word_set(got) == want);
}

TEST_CASE("zero-lower-left specialization equals the widened two-part union") {
  // R = {0} with maximal hang t = k - d/2: output is {(tau(A) | M)} united
  // with {(0 | tau(B))}, B living on s + t columns.
  const FieldContext& f = FieldContext::get(2);
  CDCCode triv4 = build_trivial(2, 4, 3, 4);
  std::vector<Mat> m33 = realize_rmc(RmcSpec{RmcSpec::Kind::mrd, 2, 3, 3, 2, 0});
  std::vector<Mat> zero33 = {Mat(f, 3, 3)};

  CDCCode got = construct_generalized_linkage(2, 4, 3, 4, 3, 1, triv4, triv4, m33, zero33);
  REQUIRE(got.size() == 65);

  std::set<Subspace> want;
  for (const Subspace& a : triv4.words())
    for (const Mat& m : m33) want.insert(Subspace::from_span(hconcat(a.basis(), m)));
  for (const Subspace& b : triv4.words())
    want.insert(Subspace::from_span(hconcat(Mat(f, 3, 3), b.basis())));
  CHECK(word_set(got) == want);
}

TEST_CASE("constraint violations name the failed inequality") {
  CDCCode triv3 = build_trivial(2, 3, 3, 4);
  CDCCode triv4 = build_trivial(2, 4, 3, 4);
  std::vector<Mat> m34 = realize_rmc(RmcSpec{RmcSpec::Kind::mrd, 2, 3, 4, 2, 0});
  std::vector<Mat> zero32 = {Mat(FieldContext::get(2), 3, 2)};

  auto constraint_of = [](auto&& fn) -> std::string {
    try {
      fn();
    } catch (const ConstraintError& e) {
      return e.constraint();
    }
    return "";
  };

  CHECK(constraint_of([&] {
          construct_generalized_linkage(2, 4, 3, 3, 4, 2, triv3, triv3, m34, zero32);
        }) == "t <= k-d/2");
  CHECK(constraint_of([&] {
          construct_generalized_linkage(2, 3, 3, 3, 4, 0, triv3, triv3, m34, zero32);
        }) == "d even and d/2 >= 2");
  CHECK(constraint_of([&] {
          construct_generalized_linkage(2, 4, 3, 2, 5, 0, triv3, triv3, m34, zero32);
        }) == "k <= r");
  CHECK(constraint_of([&] {
          construct_generalized_linkage(2, 8, 3, 3, 4, 0, triv3, triv3, m34, zero32);
        }) == "d/2 <= k");
  {
    // An R word above the rank cap is rejected by name.
    std::vector<Mat> bad_r = {Mat::identity(FieldContext::get(2), 3)};
    CHECK(constraint_of([&] {
            construct_generalized_linkage(2, 4, 3, 3, 4, 0, triv3, triv4, m34, bad_r);
          }) == "rank(R word) <= k - d/2 - t");
  }
  // Ingredient with the wrong shape is a plain argument error.
  CHECK_THROWS_AS(construct_generalized_linkage(2, 4, 3, 3, 4, 1, triv3, triv3, m34, zero32),
                  std::invalid_argument);  // B must live on s + t = 5 columns
}

TEST_CASE("two-block chain assembly is the two-block linkage") {
  // Same ingredients, both assembly routes, identical word sets.
  const FieldContext& f = FieldContext::get(2);
  CDCCode triv4 = build_trivial(2, 4, 3, 4);
  CDCCode triv3 = build_trivial(2, 3, 3, 4);
  std::vector<Mat> m33 = realize_rmc(RmcSpec{RmcSpec::Kind::mrd, 2, 3, 3, 2, 0});
  std::vector<Mat> s34 = product_rrmc(2, 3, 4, 2, 1);

  CDCCode two_block = construct_generalized_linkage(2, 4, 3, 4, 3, 0, triv4, triv3, m33, s34);
  CDCCode chain = construct_multiblock(2, 4, 3, {4, 3}, {0, 0}, {triv4, triv3},
                                       {{}, m33}, {{}, {}}, {s34, {}});
  REQUIRE(two_block.size() == 71);
  CHECK(word_set(chain) == word_set(two_block));
}

TEST_CASE("three-block chain: termwise cardinality and verified distance") {
  const FieldContext& f = FieldContext::get(2);
  CDCCode a0 = build_trivial(2, 3, 3, 4);
  CDCCode a1 = build_trivial(2, 4, 3, 4);
  CDCCode a2 = build_trivial(2, 4, 3, 4);
  std::vector<Mat> m33 = realize_rmc(RmcSpec{RmcSpec::Kind::mrd, 2, 3, 3, 2, 0});  // 64
  std::vector<Mat> r0 = product_rrmc(2, 3, 3, 2, 1);                                // 7, cap 1
  std::vector<Mat> s_zero = {Mat(f, 3, 2)};                                         // cap 0

  CDCCode code = construct_multiblock(2, 4, 3, {3, 3, 3}, {0, 1, 1}, {a0, a1, a2},
                                      {{}, m33, m33}, {r0, {}, {}}, {s_zero, s_zero, {}});
  // Termwise: 1*64*64 + |s_zero|*1*64 + 7*|s_zero|*1.
  REQUIRE(code.size() == 4096 + 64 + 7);
  REQUIRE(code.v() == 9);
  VerifyReport rep = verify_cdc_sampled(CdcSourceView(code), 4, 200000, 99);
  CHECK_FALSE(rep.falsified);
}

TEST_CASE("three-block chain accepts wider blocks and still multiplies out") {
  BoundsEngine eng;
  CDCCode nine = construct_from_plan(eng.constructible_plan(2, 5, 4, 3));  // 9 words on 5 dims
  const FieldContext& f = FieldContext::get(2);
  CDCCode a0 = build_trivial(2, 3, 3, 4);
  std::vector<Mat> m34 = realize_rmc(RmcSpec{RmcSpec::Kind::mrd, 2, 3, 4, 2, 0});  // 256
  std::vector<Mat> r0 = product_rrmc(2, 3, 3, 2, 1);                                // 7
  std::vector<Mat> s0 = {Mat(f, 3, 2)};
  std::vector<Mat> s1 = {Mat(f, 3, 3)};

  CDCCode code = construct_multiblock(2, 4, 3, {3, 4, 4}, {0, 1, 1}, {a0, nine, nine},
                                      {{}, m34, m34}, {r0, {}, {}}, {s0, s1, {}});
  REQUIRE(code.size() == 256 * 256 + 9 * 256 + 7 * 9);
  VerifyReport rep = verify_cdc_sampled(CdcSourceView(code), 4, 200000, 7);
  CHECK_FALSE(rep.falsified);
}

TEST_CASE("chain constraint violations are named per block") {
  CDCCode a0 = build_trivial(2, 3, 3, 4);
  CDCCode a1 = build_trivial(2, 5, 3, 4);
  std::vector<Mat> m33 = realize_rmc(RmcSpec{RmcSpec::Kind::mrd, 2, 3, 3, 2, 0});
  auto expect_constraint = [&](std::vector<int> t, const std::string& want) {
    try {
      construct_multiblock(2, 4, 3, {3, 3, 3}, t, {a0, a1, a1}, {{}, m33, m33}, {{}, {}, {}},
                           {{}, {}, {}});
    } catch (const ConstraintError& e) {
      CHECK(e.constraint() == want);
      return;
    }
    FAIL("no constraint error raised");
  };
  expect_constraint({0, 2, 1}, "t_i <= k-d/2");
  expect_constraint({1, 1, 1}, "t_0 = 0");
  CHECK_THROWS_AS(construct_multiblock(2, 4, 3, {9}, {0}, {a0}, {{}}, {{}}, {{}}),
                  ConstraintError);  // single block is not a chain
}

TEST_CASE("far-apart sufficient conditions imply the distance they certify") {
  auto rng = make_rng(0x5eed21);
  const int d = 4;
  int seen_cdc = 0, seen_rmc = 0, seen_gap = 0;
  for (int it = 0; it < kPropertyIters; ++it) {
    const FieldContext& f = FieldContext::get(it % 2 == 0 ? 2 : 3);
    int k = uniform_int(rng, 2, 3);
    int left = uniform_int(rng, k, 4);
    int right = uniform_int(rng, k, 4);

    Mat ab = random_full_rank(f, k, left + right, rng);
    Mat cd = random_full_rank(f, k, left + right, rng);
    auto take = [&](const Mat& m, int from, int width) {
      Mat out(f, k, width);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < width; ++j) out.set(i, j, m.at(i, from + j));
      return out;
    };
    Mat a = take(ab, 0, left), b = take(ab, left, right);
    Mat c = take(cd, 0, left), dd = take(cd, left, right);
    if (it % 4 == 0) {  // exercise the identical-left-block branch
      c = a;
      cd = hconcat(c, dd);
      if (rank(cd) < k) continue;  // the precondition demands full-rank words
    }

    MainCase mc = lemma_main_case(a, b, c, dd, d);
    if (mc == MainCase::none) continue;
    if (mc == MainCase::cdc_part) ++seen_cdc;
    if (mc == MainCase::rmc_part) ++seen_rmc;
    if (mc == MainCase::rank_gap) ++seen_gap;
    int dist = subspace_distance(Subspace::from_full_rank(ab), Subspace::from_full_rank(cd));
    CAPTURE(static_cast<int>(mc));
    REQUIRE(dist >= d);
  }
  // The sweep must exercise every sufficient condition.
  CHECK(seen_cdc > 0);
  CHECK(seen_rmc > 0);
  CHECK(seen_gap > 0);
}

TEST_CASE("the stated example cases map to the expected conditions") {
  const FieldContext& f = FieldContext::get(2);
  auto rng = make_rng(0x5eed22);
  Mat id = Mat::identity(f, 3);
  Mat b = Mat(f, 3, 3);
  Mat d = Mat::identity(f, 3);  // rank distance 3 >= d/2
  CHECK(lemma_main_case(id, b, id, d, 4) == MainCase::rmc_part);

  Mat low = Mat(f, 3, 3);
  low.set(0, 0, 1);  // rank 1 <= k - d/2
  Mat fill = random_mat(f, 3, 3, rng);
  Mat fill2 = random_mat(f, 3, 3, rng);
  while (rank(hconcat(low, fill2)) < 3) fill2 = random_mat(f, 3, 3, rng);
  CHECK(lemma_main_case(id, fill, low, fill2, 4) == MainCase::rank_gap);

  // Left blocks span complementary full-rank subspaces of GF(2)^6; they are
  // at subspace distance 6 >= d, so the left-block condition fires.
  Mat left_a(f, 3, 6), left_c(f, 3, 6);
  for (int i = 0; i < 3; ++i) {
    left_a.set(i, i, 1);
    left_c.set(i, 3 + i, 1);
  }
  CHECK(lemma_main_case(left_a, Mat(f, 3, 2), left_c, Mat(f, 3, 2), 4) == MainCase::cdc_part);
}

TEST_CASE("products of far factor pairs are far exactly when both sides are") {
  auto rng = make_rng(0x5eed23);
  for (int it = 0; it < kPropertyIters; ++it) {
    const FieldContext& f = FieldContext::get(it % 2 == 0 ? 2 : 3);
    int u = uniform_int(rng, 1, 2);
    int a = uniform_int(rng, 2 * u, 2 * u + 2);
    int b = uniform_int(rng, 2 * u, 2 * u + 2);
    Mat a1 = transpose(random_full_rank(f, u, a, rng));  // a x u, full column rank
    Mat b1 = transpose(random_full_rank(f, u, a, rng));
    Mat a2 = random_full_rank(f, u, b, rng);             // u x b, full row rank
    Mat b2 = random_full_rank(f, u, b, rng);

    bool far_product = rank_distance(mul(a1, a2), mul(b1, b2)) == 2 * u;
    bool far_factors =
        rank(hconcat(a1, b1)) == 2 * u && rank(vconcat(a2, b2)) == 2 * u;
    REQUIRE(far_product == far_factors);
  }
}

TEST_CASE("factor subspace distances bound twice the product rank distance") {
  auto rng = make_rng(0x5eed24);
  for (int it = 0; it < kPropertyIters; ++it) {
    const FieldContext& f = FieldContext::get(it % 2 == 0 ? 2 : 3);
    int u = uniform_int(rng, 1, 2);
    int a = uniform_int(rng, u + 1, u + 3);
    int b = uniform_int(rng, u + 1, u + 3);
    Mat a1 = transpose(random_full_rank(f, u, a, rng));
    Mat b1 = transpose(random_full_rank(f, u, a, rng));
    Mat a2 = random_full_rank(f, u, b, rng);
    Mat b2 = random_full_rank(f, u, b, rng);

    int lhs = subspace_distance(Subspace::from_full_rank(transpose(a1)),
                                Subspace::from_full_rank(transpose(b1))) +
              subspace_distance(Subspace::from_full_rank(a2), Subspace::from_full_rank(b2));
    REQUIRE(lhs <= 2 * rank_distance(mul(a1, a2), mul(b1, b2)));
  }
}

TEST_CASE("swapping the two blocks of both words preserves their distance") {
  auto rng = make_rng(0x5eed25);
  for (int it = 0; it < kPropertyIters; ++it) {
    const FieldContext& f = FieldContext::get(testutil::small_field_orders()[it % 7]);
    int k = uniform_int(rng, 1, 3);
    int left = uniform_int(rng, 1, 4);
    int right = uniform_int(rng, std::max(1, k - left), 4);
    if (left + right < k) continue;
    Mat x = random_full_rank(f, k, left + right, rng);
    Mat y = random_full_rank(f, k, left + right, rng);
    auto swap_blocks = [&](const Mat& m) {
      Mat l(f, k, left), r(f, k, right);
      for (int i = 0; i < k; ++i) {
        for (int j = 0; j < left; ++j) l.set(i, j, m.at(i, j));
        for (int j = 0; j < right; ++j) r.set(i, j, m.at(i, left + j));
      }
      return hconcat(r, l);
    };
    REQUIRE(subspace_distance(Subspace::from_full_rank(x), Subspace::from_full_rank(y)) ==
            subspace_distance(Subspace::from_full_rank(swap_blocks(x)),
                              Subspace::from_full_rank(swap_blocks(y))));
  }
}

TEST_CASE("second-block words meet the tail space in dimension at least d/2") {
  auto rng = make_rng(0x5eed26);
  const int d = 4;
  for (int it = 0; it < kPropertyIters; ++it) {
    const FieldContext& f = FieldContext::get(it % 2 == 0 ? 2 : 3);
    int k = uniform_int(rng, 2, 4);
    int t = uniform_int(rng, 0, k - d / 2);
    int s = uniform_int(rng, std::max(1, k - t), 5);
    int r = uniform_int(rng, std::max(k, t + 1), 5);

    Subspace b = random_subspace(f, s + t, k, rng);
    Mat rr = random_rank_capped(f, k, r - t, k - d / 2 - t, rng);
    Mat word = hconcat(rr, b.basis());  // rank k: the right block alone is full rank

    // dim(word intersect tail) = k + s - dim(word + tail).
    Mat tail = hconcat(Mat(f, s, r), Mat::identity(f, s));
    int dim_sum = rank(vconcat(word, tail));
    REQUIRE(k + s - dim_sum >= d / 2);
  }
}

TEST_CASE("plan execution materializes exactly the promised code") {
  BoundsEngine eng;
  {
    const PlanNode& p = eng.constructible_plan(2, 4, 4, 2);
    CDCCode c = construct_from_plan(p);
    CHECK(BigCount(c.size()) == p.size);
    CHECK(c.size() == 5);
    CHECK(verify_cdc(c).certified);
  }
  {
    const PlanNode& p = eng.constructible_plan(2, 7, 4, 3);
    REQUIRE(p.size == 265);
    CDCCode c = construct_from_plan(p);
    CHECK(c.size() == 265);
    VerifyReport rep = verify_cdc(c);
    CHECK(rep.certified);
    CHECK(*rep.min_distance_observed == 4);
  }
  {
    // Complement route when the dimension exceeds half the ambient.
    const PlanNode& p = eng.constructible_plan(2, 5, 4, 3);
    CDCCode c = construct_from_plan(p);
    CHECK(c.k() == 3);
    CHECK(c.size() == 9);
    CHECK(verify_cdc(c).certified);
  }
  {
    // Too large for the word budget: refused up front.
    const PlanNode& p = eng.constructible_plan(2, 8, 4, 4);
    REQUIRE(p.size == 4622);
    ConstructOptions opt;
    opt.max_words = 100;
    CHECK_THROWS_AS(construct_from_plan(p, opt), BudgetError);
  }
}

TEST_CASE("lazy word sources stream the same code the materializer builds") {
  BoundsEngine eng;
  const PlanNode& p = eng.constructible_plan(2, 7, 4, 3);
  CDCCode c = construct_from_plan(p);
  std::unique_ptr<SubspaceSource> src = make_linkage_source(p);
  REQUIRE(src->size() == c.size());
  CHECK(src->q() == 2);
  CHECK(src->ambient() == 7);
  CHECK(src->dim() == 3);
  std::set<Subspace> streamed;
  for (size_t i = 0; i < src->size(); ++i) streamed.insert(src->word(i));
  CHECK(streamed == word_set(c));
}
