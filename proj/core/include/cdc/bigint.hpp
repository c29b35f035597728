#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace cdc {

// Exact arbitrary-precision counter. All cardinalities, bounds and counting
// formulas in the library are computed exactly; no floating point is involved
// anywhere in a value that ends up in a result or report.
using BigCount = boost::multiprecision::cpp_int;

// q^e for e >= 0.
inline BigCount big_pow(long long base, long long e) {
  BigCount b = base;
  return boost::multiprecision::pow(b, static_cast<unsigned>(e));
}

}  // namespace cdc
