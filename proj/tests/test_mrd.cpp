#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <set>
#include <vector>

#include "cdc/bigint.hpp"
#include "cdc/errors.hpp"
#include "cdc/matrix.hpp"
#include "cdc/mrd.hpp"
#include "cdc/qcount.hpp"

using namespace cdc;

namespace {

std::map<int, BigCount> rank_histogram(const std::vector<Mat>& words) {
  std::map<int, BigCount> hist;
  for (const Mat& w : words) ++hist[rank(w)];
  return hist;
}

}  // namespace

TEST_CASE("linear construction hits the maximum size with the promised distance") {
  struct Case {
    int q, a, b, d;
  };
  for (Case c : {Case{2, 2, 2, 2}, Case{2, 3, 3, 2}, Case{2, 3, 4, 2}, Case{2, 4, 4, 3},
                 Case{3, 3, 3, 2}, Case{3, 2, 4, 2}}) {
    LinearMrdCode code = build_linear_mrd(c.q, c.a, c.b, c.d);
    CHECK(code.q == c.q);
    CHECK(code.size() == mrd_size(c.q, c.a, c.b, c.d));

    std::vector<Mat> words = enumerate_mrd(code, uint64_t{1} << 22);
    REQUIRE(BigCount(words.size()) == code.size());

    std::set<Mat> distinct(words.begin(), words.end());
    REQUIRE(distinct.size() == words.size());

    // Linear: minimum distance equals minimum nonzero rank, and it is exactly d.
    int min_rank = c.a + c.b;
    for (const Mat& w : words) {
      int r = rank(w);
      if (r > 0 && r < min_rank) min_rank = r;
    }
    REQUIRE(min_rank == c.d);

    // Spot-check closure under addition.
    for (size_t i = 0; i < words.size(); i += words.size() / 7 + 1)
      for (size_t j = 0; j < words.size(); j += words.size() / 5 + 1)
        REQUIRE(distinct.count(add(words[i], words[j])) == 1);
  }
}

TEST_CASE("enumerated rank histogram matches the counting formula") {
  struct Case {
    int q, a, b, d;
  };
  for (Case c : {Case{2, 2, 2, 2}, Case{2, 3, 3, 2}, Case{2, 4, 4, 2}, Case{2, 4, 4, 3},
                 Case{3, 3, 3, 2}}) {
    std::vector<Mat> words = enumerate_mrd(build_linear_mrd(c.q, c.a, c.b, c.d), uint64_t{1} << 22);
    std::map<int, BigCount> hist = rank_histogram(words);
    CHECK(hist[0] == 1);
    for (int r = 1; r < c.d; ++r) CHECK(hist.count(r) == 0);
    for (int r = c.d; r <= std::min(c.a, c.b); ++r) {
      BigCount got = hist.count(r) ? hist[r] : 0;
      CHECK(got == mrd_rank_distribution(c.q, c.a, c.b, c.d, r));
    }
  }
}

TEST_CASE("degenerate distance above min(a,b) leaves only the zero word") {
  LinearMrdCode code = build_linear_mrd(2, 3, 3, 4);
  CHECK(code.size() == 1);
  std::vector<Mat> words = enumerate_mrd(code, 16);
  REQUIRE(words.size() == 1);
  CHECK(rank(words[0]) == 0);
}

TEST_CASE("span enumeration: order, streaming agreement and budget") {
  LinearMrdCode code = build_linear_mrd(2, 3, 3, 2);
  std::vector<Mat> words = enumerate_linear_span(code.basis, code.q, code.a, code.b, 1 << 12);
  REQUIRE(words.size() == 64);

  std::vector<Mat> streamed;
  for_each_in_linear_span(code.basis, code.q, code.a, code.b,
                          [&](const Mat& w) { streamed.push_back(w); });
  REQUIRE(streamed == words);

  CHECK_THROWS_AS(enumerate_linear_span(code.basis, code.q, code.a, code.b, 63), BudgetError);
  CHECK(enumerate_mrd(code, 1 << 12) == words);
}

TEST_CASE("rank-restricted subsets: exact size, cap, zero word") {
  struct Case {
    int q, a, b, d, u;
  };
  for (Case c : {Case{2, 3, 3, 2, 2}, Case{2, 4, 4, 2, 2}, Case{2, 4, 5, 2, 2},
                 Case{2, 3, 3, 2, 1}, Case{3, 3, 3, 2, 2}}) {
    std::vector<Mat> words = delta_subset_words(c.q, c.a, c.b, c.d, c.u);
    CHECK(BigCount(words.size()) == delta_bound(c.q, c.a, c.b, c.d, c.u));
    bool has_zero = false;
    for (const Mat& w : words) {
      REQUIRE(rank(w) <= c.u);
      if (rank(w) == 0) has_zero = true;
    }
    CHECK(has_zero);
  }
  CHECK(delta_subset_words(2, 3, 3, 2, 2).size() == 50);
  CHECK(delta_subset_words(2, 4, 4, 2, 2).size() == 526);
  CHECK_THROWS_AS(delta_subset_words(2, 5, 5, 2, 2, 1 << 4), BudgetError);
}
