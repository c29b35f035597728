#include "cdc/lambda.hpp"

#include <algorithm>
#include <stdexcept>

#include "cdc/qcount.hpp"

#include "json.hpp"

namespace cdc {

std::string LambdaBounds::to_json() const {
  nlohmann::json j;
  j["format_version"] = 1;
  j["q"] = q;
  j["a"] = a;
  j["b"] = b;
  j["d"] = d;
  j["u"] = u;
  j["lower"] = lower.str();
  j["upper"] = upper.str();
  j["exact"] = exact;
  j["lower_source"] = lower_source;
  j["upper_source"] = upper_source;
  return j.dump(2);
}

std::optional<BigCount> lambda_closed_form(int q, int a, int b, int d, int u) {
  if (a < 1 || b < 1 || d < 1 || u < 0) {
    throw std::invalid_argument("lambda parameters require a, b, d >= 1 and u >= 0");
  }
  const int n = std::min(a, b);
  if (2 * u < d || n < d) return BigCount(1);
  if (n <= u) return mrd_size(q, a, b, d);
  if (d == 1) {
    BigCount total = 0;
    for (int r = 0; r <= std::min(u, n); ++r) total += count_matrices_of_rank(q, a, b, r);
    return total;
  }
  if (d == 2 * u && n % u == 0) {
    // constant-rank case: one word per member of a spread of u-subspaces of
    // the smaller side
    return (big_pow(q, n) - 1) / (big_pow(q, u) - 1);
  }
  return std::nullopt;
}

BigCount lambda_upper_bound(int q, int a, int b, int d, int u) {
  if (const auto exact = lambda_closed_form(q, a, b, d, u)) return *exact;

  const int n = std::min(a, b);
  const int m = std::max(a, b);
  BigCount best = mrd_size(q, a, b, d);

  // column-puncturing census: after d-1 punctures every word is a distinct
  // matrix of rank at most u on min(a,b)-d+1 columns
  if (d >= 2 && d <= n) {
    BigCount census = 0;
    for (int r = 0; r <= std::min(u, n - d + 1); ++r) {
      census += count_matrices_of_rank(q, m, n - d + 1, r);
    }
    best = std::min(best, census);
    best = std::min(best, lambda_upper_bound(q, a, b - 1, d - 1, u));
    best = std::min(best, lambda_upper_bound(q, a - 1, b, d - 1, u));
  }
  return best;
}

}  // namespace cdc
