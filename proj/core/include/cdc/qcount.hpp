#pragma once

#include "cdc/bigint.hpp"

namespace cdc {

// Exact q-analog combinatorics. All functions are total over the documented
// parameter ranges and throw std::invalid_argument outside them.

// [n]_q = (q^n - 1)/(q - 1); [0]_q = 0.
BigCount q_number(int q, int n);

// [n]_q! = prod_{i=1}^{n} [i]_q.
BigCount q_factorial(int q, int n);

// Gaussian binomial [v choose k]_q. Throws for k < 0 or k > v.
BigCount q_binomial(int q, int v, int k);

// Exact form of the classical estimate 1 < [v choose k]_q / q^{k(v-k)} < 3.47
// for 0 < k < v, checked by cross-multiplication (347/100), no floating point.
bool q_binomial_estimate_check(int q, int v, int k);

// Number of a x b matrices over GF(q) of rank exactly r,
// prod_{i=0}^{r-1} (q^a - q^i)(q^b - q^i)/(q^r - q^i).
BigCount count_matrices_of_rank(int q, int a, int b, int r);

// Same count in factored form q^{r(r-1)/2} (q-1)^r [r]_q! [a r]_q [b r]_q;
// kept separately as an independent evaluation route.
BigCount count_matrices_of_rank_factored(int q, int a, int b, int r);

// Cardinality of a maximum-rank-distance code of minimum rank distance d in
// a x b matrices: ceil(q^{max(a,b)(min(a,b)-d+1)}), i.e. 1 when the exponent
// is non-positive. Requires d >= 1.
BigCount mrd_size(int q, int a, int b, int d);

// Number of words of rank exactly r in an MRD code with the parameters
// above, for d <= r <= min(a,b):
// [min(a,b) choose r]_q * sum_{i=0}^{r-d} (-1)^i q^{i(i-1)/2} [r choose i]_q
//   (q^{max(a,b)(r-d+1-i)} - 1).
// The alternating sum is evaluated with signed exact arithmetic and the
// result is asserted non-negative.
BigCount mrd_rank_distribution(int q, int a, int b, int d, int r);

// 1 + sum_{r=d}^{min(u,a,b)} mrd_rank_distribution(q,a,b,d,r): the size of
// the subset of an MRD code of words of rank <= u (zero word included).
// Empty sum when d > min(u,a,b).
BigCount delta_bound(int q, int a, int b, int d, int u);

}  // namespace cdc
