#include "cdc/mrd.hpp"

#include <algorithm>
#include <stdexcept>

#include "cdc/errors.hpp"
#include "cdc/extfield.hpp"
#include "cdc/field.hpp"
#include "cdc/qcount.hpp"

namespace cdc {

BigCount LinearMrdCode::size() const { return big_pow(q, static_cast<long long>(basis.size())); }

LinearMrdCode build_linear_mrd(int q, int a, int b, int d) {
  if (a < 1 || b < 1 || d < 1) {
    throw std::invalid_argument("MRD parameters require a, b, d >= 1");
  }
  LinearMrdCode code;
  code.q = q;
  code.a = a;
  code.b = b;
  code.d = d;

  const int n = std::min(a, b);
  const int m = std::max(a, b);
  const int k_dim = n - d + 1;
  if (k_dim <= 0) return code;  // only the zero word

  const FieldContext& F = FieldContext::get(q);
  ExtField E(F, m);

  // Evaluation points 1, alpha, ..., alpha^{n-1}: powers of a degree-m
  // generator, independent over the base field since n <= m.
  std::vector<uint64_t> points(n);
  points[0] = 1;
  for (int l = 1; l < n; ++l) points[l] = E.mul(points[l - 1], E.alpha());

  // Basis polynomial alpha^j * x^{q^i} evaluated column-wise; expanding each
  // value over the base field gives an m-by-n matrix per (i, j).
  const uint64_t alpha = E.alpha();
  for (int i = 0; i < k_dim; ++i) {
    std::vector<uint64_t> frob(n);  // points raised to the q^i power
    for (int l = 0; l < n; ++l) frob[l] = E.pow_q(points[l], i);
    uint64_t scale = 1;
    for (int j = 0; j < m; ++j) {
      Mat w(F, m, n);
      for (int l = 0; l < n; ++l) {
        const std::vector<uint8_t> digits = E.expand(E.mul(scale, frob[l]));
        for (int r = 0; r < m; ++r) w.set(r, l, digits[r]);
      }
      code.basis.push_back(a >= b ? w : transpose(w));
      scale = E.mul(scale, alpha);
    }
  }
  return code;
}

void for_each_in_linear_span(const std::vector<Mat>& basis, int q, int rows, int cols,
                             uint64_t max_words, const std::function<void(const Mat&)>& fn) {
  const FieldContext& F = FieldContext::get(q);
  const size_t nb = basis.size();
  if (nb >= 63 || (nb > 0 && big_pow(q, static_cast<long long>(nb)) > BigCount(max_words))) {
    throw BudgetError("linear span of dimension " + std::to_string(nb) + " over GF(" +
                      std::to_string(q) + ") exceeds the enumeration cap of " +
                      std::to_string(max_words) + " words");
  }

  Mat cur(F, rows, cols);
  std::vector<uint8_t> digit(nb, 0);
  const auto add_scaled = [&](const Mat& basis_word, uint8_t delta) {
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) {
        cur.set(r, c, F.add(cur.at(r, c), F.mul(delta, basis_word.at(r, c))));
      }
    }
  };

  while (true) {
    fn(cur);
    size_t p = 0;
    while (p < nb && digit[p] == q - 1) {
      add_scaled(basis[p], F.neg(static_cast<uint8_t>(q - 1)));
      digit[p] = 0;
      ++p;
    }
    if (p == nb) break;
    add_scaled(basis[p], F.sub(static_cast<uint8_t>(digit[p] + 1), digit[p]));
    ++digit[p];
  }
}

std::vector<Mat> enumerate_linear_span(const std::vector<Mat>& basis, int q, int rows, int cols,
                                       uint64_t max_words) {
  std::vector<Mat> out;
  for_each_in_linear_span(basis, q, rows, cols, max_words,
                          [&](const Mat& w) { out.push_back(w); });
  return out;
}

std::vector<Mat> enumerate_mrd(const LinearMrdCode& code, uint64_t max_words) {
  return enumerate_linear_span(code.basis, code.q, code.a, code.b, max_words);
}

std::vector<Mat> delta_subset_words(int q, int a, int b, int d, int u, uint64_t max_enumeration) {
  const LinearMrdCode code = build_linear_mrd(q, a, b, d);
  std::vector<Mat> out;
  for_each_in_linear_span(code.basis, q, a, b, max_enumeration, [&](const Mat& w) {
    if (rank(w) <= u) out.push_back(w);
  });
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace cdc
