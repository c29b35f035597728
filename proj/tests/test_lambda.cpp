#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <optional>

#include "json.hpp"

#include "cdc/bigint.hpp"
#include "cdc/bounds.hpp"
#include "cdc/lambda.hpp"
#include "cdc/qcount.hpp"
#include "test_util.hpp"

using namespace cdc;

TEST_CASE("closed forms cover the degenerate, unrestricted and paired regimes") {
  // Too-small cap or too-large distance: only one word fits.
  CHECK(lambda_closed_form(2, 4, 4, 3, 1) == BigCount(1));   // 2u < d
  CHECK(lambda_closed_form(2, 3, 3, 4, 3) == BigCount(1));   // min(a,b) < d
  // Cap at or above min(a,b): the restriction is vacuous.
  CHECK(lambda_closed_form(2, 3, 3, 2, 3) == mrd_size(2, 3, 3, 2));
  CHECK(lambda_closed_form(2, 4, 5, 2, 4) == mrd_size(2, 4, 5, 2));
  // Distance 1: every matrix of rank at most u qualifies.
  {
    BigCount census = 0;
    for (int r = 0; r <= 1; ++r) census += count_matrices_of_rank(2, 3, 3, r);
    CHECK(lambda_closed_form(2, 3, 3, 1, 1) == census);
  }
  // d = 2u with u dividing min(a,b): the paired-spread count is extremal.
  CHECK(lambda_closed_form(2, 4, 4, 4, 2) == BigCount(5));
  CHECK(lambda_closed_form(2, 3, 3, 2, 1) == BigCount(7));
  CHECK(lambda_closed_form(3, 3, 3, 2, 1) == BigCount(13));
  // Open cases have no closed form.
  CHECK_FALSE(lambda_closed_form(2, 3, 3, 2, 2).has_value());
  CHECK_FALSE(lambda_closed_form(2, 4, 4, 2, 2).has_value());
  CHECK_FALSE(lambda_closed_form(2, 5, 5, 3, 2).has_value());
}

TEST_CASE("upper bound: frozen values and consistency with closed forms") {
  CHECK(lambda_upper_bound(2, 3, 3, 2, 1) == 7);
  CHECK(lambda_upper_bound(2, 3, 3, 2, 2) == 64);
  CHECK(lambda_upper_bound(2, 4, 4, 2, 2) == 1576);
  for (int q : {2, 3})
    for (int a = 1; a <= 4; ++a)
      for (int b = 1; b <= 4; ++b)
        for (int d = 1; d <= std::min(a, b); ++d)
          for (int u = 0; u <= std::min(a, b); ++u) {
            BigCount up = lambda_upper_bound(q, a, b, d, u);
            CHECK(up <= mrd_size(q, a, b, d));
            CHECK(up >= 1);
            if (std::optional<BigCount> cf = lambda_closed_form(q, a, b, d, u))
              CHECK(up == *cf);
          }
}

TEST_CASE("engine bounds: frozen open cases and exactness flags") {
  BoundsEngine eng;
  {
    const LambdaBounds& lb = eng.lambda(2, 3, 3, 2, 2);
    CHECK(lb.lower == 50);
    CHECK(lb.upper == 64);
    CHECK_FALSE(lb.exact);
    CHECK_FALSE(lb.lower_source.empty());
    CHECK_FALSE(lb.upper_source.empty());
  }
  {
    const LambdaBounds& lb = eng.lambda(2, 4, 4, 2, 2);
    CHECK(lb.lower == 526);
    CHECK(lb.upper == 1576);
    CHECK_FALSE(lb.exact);
  }
  {
    const LambdaBounds& lb = eng.lambda(3, 3, 3, 2, 1);
    CHECK(lb.exact);
    CHECK(lb.lower == 13);
    CHECK(lb.upper == 13);
  }
  {
    const LambdaBounds& lb = eng.lambda(2, 5, 5, 3, 2);
    CHECK(lb.lower >= 9);
    CHECK(lb.lower <= lb.upper);
  }
  // Memoized: repeated queries return the same entry.
  CHECK(&eng.lambda(2, 3, 3, 2, 2) == &eng.lambda(2, 3, 3, 2, 2));
}

TEST_CASE("bounds sandwich the restricted subset and the unrestricted maximum") {
  BoundsEngine eng;
  auto rng = testutil::make_rng(0x5eed20);
  for (int it = 0; it < 60; ++it) {
    int q = testutil::small_field_orders()[it % 7];
    int a = testutil::uniform_int(rng, 1, 5);
    int b = testutil::uniform_int(rng, 1, 5);
    int d = testutil::uniform_int(rng, 1, std::min(a, b) + 1);
    int u = testutil::uniform_int(rng, 0, std::min(a, b));
    const LambdaBounds& lb = eng.lambda(q, a, b, d, u);
    CAPTURE(q);
    CAPTURE(a);
    CAPTURE(b);
    CAPTURE(d);
    CAPTURE(u);
    CHECK(delta_bound(q, a, b, d, u) <= lb.lower);
    CHECK(lb.lower <= lb.upper);
    CHECK(lb.upper <= mrd_size(q, a, b, d));
    if (lb.exact) CHECK(lb.lower == lb.upper);
  }
}

TEST_CASE("bounds serialize with explicit parameters and provenance") {
  BoundsEngine eng;
  nlohmann::json j = nlohmann::json::parse(eng.lambda(2, 3, 3, 2, 2).to_json());
  CHECK(j.at("q") == 2);
  CHECK(j.at("a") == 3);
  CHECK(j.at("b") == 3);
  CHECK(j.at("d") == 2);
  CHECK(j.at("u") == 2);
  CHECK(j.at("lower").get<std::string>() == "50");
  CHECK(j.at("upper").get<std::string>() == "64");
  CHECK(j.at("exact") == false);
  CHECK(j.contains("lower_source"));
  CHECK(j.contains("upper_source"));
}
