#pragma once

#include <optional>
#include <string>

#include "cdc/bigint.hpp"

namespace cdc {

// Bound sandwich for the largest rank-restricted code of a-by-b matrices
// over GF(q) with minimum rank distance d and rank cap u.
struct LambdaBounds {
  int q = 0, a = 0, b = 0, d = 0, u = 0;
  BigCount lower = 1;
  BigCount upper = 1;
  bool exact = false;
  std::string lower_source;
  std::string upper_source;

  std::string to_json() const;
};

// Exact value where a closed form settles it: degenerate parameters (cap
// below half the distance, or distance above the smaller side), cap at least
// the smaller side (plain maximum-rank-distance size), distance one (full
// rank census), or distance twice the cap with the cap dividing the smaller
// side (partial-spread-free case). Returns nullopt otherwise.
std::optional<BigCount> lambda_closed_form(int q, int a, int b, int d, int u);

// Engine-free upper bound: the least of the closed form (when available),
// the unrestricted maximum size, the column-puncturing census bound, and the
// one-column/one-row puncturing recursions.
BigCount lambda_upper_bound(int q, int a, int b, int d, int u);

}  // namespace cdc
