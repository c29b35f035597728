#include "cdc/qcount.hpp"

#include <algorithm>
#include <stdexcept>

namespace cdc {
namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

BigCount q_number(int q, int n) {
  require(q >= 2, "q_number: q must be at least 2");
  require(n >= 0, "q_number: n must be non-negative");
  return (big_pow(q, n) - 1) / (q - 1);
}

BigCount q_factorial(int q, int n) {
  require(n >= 0, "q_factorial: n must be non-negative");
  BigCount f = 1;
  for (int i = 1; i <= n; ++i) f *= q_number(q, i);
  return f;
}

BigCount q_binomial(int q, int v, int k) {
  require(q >= 2, "q_binomial: q must be at least 2");
  require(k >= 0, "q_binomial: k must be non-negative");
  require(k <= v, "q_binomial: k must not exceed v");
  BigCount num = 1, den = 1;
  for (int i = 0; i < k; ++i) {
    num *= big_pow(q, v) - big_pow(q, i);
    den *= big_pow(q, k) - big_pow(q, i);
  }
  return num / den;  // exact: den divides num
}

bool q_binomial_estimate_check(int q, int v, int k) {
  require(k > 0 && k < v, "q_binomial_estimate_check: need 0 < k < v");
  BigCount b = q_binomial(q, v, k);
  BigCount scale = big_pow(q, static_cast<long long>(k) * (v - k));
  return b > scale && 100 * b < 347 * scale;
}

BigCount count_matrices_of_rank(int q, int a, int b, int r) {
  require(q >= 2, "count_matrices_of_rank: q must be at least 2");
  require(a >= 0 && b >= 0, "count_matrices_of_rank: dimensions must be non-negative");
  require(r >= 0, "count_matrices_of_rank: r must be non-negative");
  if (r > std::min(a, b)) return 0;
  BigCount num = 1, den = 1;
  for (int i = 0; i < r; ++i) {
    num *= (big_pow(q, a) - big_pow(q, i)) * (big_pow(q, b) - big_pow(q, i));
    den *= big_pow(q, r) - big_pow(q, i);
  }
  return num / den;
}

BigCount count_matrices_of_rank_factored(int q, int a, int b, int r) {
  require(r >= 0, "count_matrices_of_rank_factored: r must be non-negative");
  if (r > std::min(a, b)) return 0;
  BigCount v = big_pow(q, static_cast<long long>(r) * (r - 1) / 2);
  BigCount qm1 = q - 1;
  for (int i = 0; i < r; ++i) v *= qm1;
  return v * q_factorial(q, r) * q_binomial(q, a, r) * q_binomial(q, b, r);
}

BigCount mrd_size(int q, int a, int b, int d) {
  require(q >= 2, "mrd_size: q must be at least 2");
  require(d >= 1, "mrd_size: d must be at least 1");
  require(a >= 0 && b >= 0, "mrd_size: dimensions must be non-negative");
  long long e = static_cast<long long>(std::max(a, b)) * (std::min(a, b) - d + 1);
  if (e <= 0) return 1;
  return big_pow(q, e);
}

BigCount mrd_rank_distribution(int q, int a, int b, int d, int r) {
  require(d >= 1, "mrd_rank_distribution: d must be at least 1");
  require(r >= d, "mrd_rank_distribution: r must be at least d");
  require(r <= std::min(a, b), "mrd_rank_distribution: r must not exceed min(a,b)");
  const int m = std::max(a, b);
  BigCount s = 0;
  for (int i = 0; i <= r - d; ++i) {
    BigCount term = big_pow(q, static_cast<long long>(i) * (i - 1) / 2) * q_binomial(q, r, i) *
                    (big_pow(q, static_cast<long long>(m) * (r - d + 1 - i)) - 1);
    if (i % 2 == 0)
      s += term;
    else
      s -= term;
  }
  BigCount v = q_binomial(q, std::min(a, b), r) * s;
  if (v < 0) throw std::logic_error("mrd_rank_distribution: negative count");
  return v;
}

BigCount delta_bound(int q, int a, int b, int d, int u) {
  require(u >= 0, "delta_bound: u must be non-negative");
  BigCount v = 1;
  int hi = std::min(u, std::min(a, b));
  for (int r = d; r <= hi; ++r) v += mrd_rank_distribution(q, a, b, d, r);
  return v;
}

}  // namespace cdc
