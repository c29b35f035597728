#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "cdc/bigint.hpp"
#include "cdc/matrix.hpp"

namespace cdc {

// A linear maximum-rank-distance code of a-by-b matrices over GF(q) with
// minimum rank distance d, represented by an F_q-basis of codeword matrices.
// The code is the F_q-span of `basis`; its size is q^basis.size() =
// q^{max(a,b) * (min(a,b) - d + 1)}.
struct LinearMrdCode {
  int q = 0, a = 0, b = 0, d = 0;
  std::vector<Mat> basis;

  BigCount size() const;
};

// Evaluation construction: codewords are the evaluations of linearized
// polynomials of bounded q-degree at min(a,b) independent points of
// GF(q^max(a,b)), written out over an F_q-basis of the extension. Requires
// 1 <= d; for d > min(a,b) the code degenerates to the zero word alone.
LinearMrdCode build_linear_mrd(int q, int a, int b, int d);

// All q^basis.size() words of an F_q-linear span, in odometer order over the
// coefficient vector (least-significant digit first). Throws BudgetError when
// the span exceeds max_words. Assumes basis matrices share field and shape.
std::vector<Mat> enumerate_linear_span(const std::vector<Mat>& basis, int q, int rows, int cols,
                                       uint64_t max_words);

// Visits every word of the span in the same order without materializing the
// list; the reference passed to fn is reused between calls.
void for_each_in_linear_span(const std::vector<Mat>& basis, int q, int rows, int cols,
                             uint64_t max_words, const std::function<void(const Mat&)>& fn);

std::vector<Mat> enumerate_mrd(const LinearMrdCode& code, uint64_t max_words);

// The words of the (q, a, b, d) MRD code whose rank is at most u: the zero
// word plus every word of rank d..u. This is the canonical rank-restricted
// subset whose size the rank-distribution sum predicts exactly.
std::vector<Mat> delta_subset_words(int q, int a, int b, int d, int u,
                                    uint64_t max_enumeration = uint64_t{1} << 24);

}  // namespace cdc
