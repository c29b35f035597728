#include "cdc/matrix.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace cdc {

Mat Mat::from_rows(const FieldContext& f, const std::vector<std::vector<int>>& rows) {
  int r = static_cast<int>(rows.size());
  int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
  Mat m(f, r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[i].size()) != c) throw std::invalid_argument("ragged rows");
    for (int j = 0; j < c; ++j) {
      int v = rows[i][j];
      if (v < 0 || v >= f.q()) throw std::invalid_argument("entry out of field range");
      m.set(i, j, static_cast<uint8_t>(v));
    }
  }
  return m;
}

std::string Mat::to_string() const {
  std::string s;
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) s += static_cast<char>('0' + at(i, j));
    if (i + 1 < rows_) s += '\n';
  }
  return s;
}

namespace detail {

Mat rref_generic(const Mat& m, int* rank_out) {
  const FieldContext& f = m.field();
  Mat a = m;
  int r = 0;
  for (int c = 0; c < a.cols() && r < a.rows(); ++c) {
    int piv = -1;
    for (int i = r; i < a.rows(); ++i) {
      if (a.at(i, c) != 0) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    if (piv != r) {
      for (int j = 0; j < a.cols(); ++j) {
        uint8_t t = a.at(r, j);
        a.set(r, j, a.at(piv, j));
        a.set(piv, j, t);
      }
    }
    uint8_t s = f.inv(a.at(r, c));
    if (s != 1) {
      for (int j = 0; j < a.cols(); ++j) a.set(r, j, f.mul(s, a.at(r, j)));
    }
    for (int i = 0; i < a.rows(); ++i) {
      if (i == r) continue;
      uint8_t v = a.at(i, c);
      if (v == 0) continue;
      for (int j = 0; j < a.cols(); ++j) a.set(i, j, f.sub(a.at(i, j), f.mul(v, a.at(r, j))));
    }
    ++r;
  }
  if (rank_out) *rank_out = r;
  return a;
}

int rank_generic(const Mat& m) {
  int r = 0;
  rref_generic(m, &r);
  return r;
}

}  // namespace detail

namespace gf2 {

bool packable(const Mat& m) { return m.field().q() == 2 && m.cols() <= 64; }

std::vector<uint64_t> pack_rows(const Mat& m) {
  std::vector<uint64_t> rows(m.rows(), 0);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (m.at(i, j)) rows[i] |= uint64_t{1} << j;
  return rows;
}

Mat unpack(const FieldContext& f, const std::vector<uint64_t>& rows, int cols) {
  Mat m(f, static_cast<int>(rows.size()), cols);
  for (size_t i = 0; i < rows.size(); ++i)
    for (int j = 0; j < cols; ++j)
      if ((rows[i] >> j) & 1) m.set(static_cast<int>(i), j, 1);
  return m;
}

int rank_packed(uint64_t* rows, int n) {
  int r = 0;
  for (int i = 0; i < n; ++i) {
    uint64_t v = rows[i];
    for (int j = 0; j < r; ++j) {
      uint64_t p = rows[j] & (~rows[j] + 1);  // lowest set bit = pivot
      if (v & p) v ^= rows[j];
    }
    if (v) rows[r++] = v;
  }
  return r;
}

std::vector<int> rref_packed(std::vector<uint64_t>& rows) {
  // Forward eliminate keeping each surviving row's lowest set bit as pivot,
  // then sort by pivot and clear above.
  int r = 0;
  for (size_t i = 0; i < rows.size(); ++i) {
    uint64_t v = rows[i];
    for (int j = 0; j < r; ++j) {
      if (v & (rows[j] & (~rows[j] + 1))) v ^= rows[j];
    }
    if (v) rows[r++] = v;
  }
  rows.resize(r);
  std::sort(rows.begin(), rows.end(), [](uint64_t a, uint64_t b) {
    return std::countr_zero(a) < std::countr_zero(b);
  });
  std::vector<int> pivots(r);
  for (int i = 0; i < r; ++i) pivots[i] = std::countr_zero(rows[i]);
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j)
      if ((rows[i] >> pivots[j]) & 1) rows[i] ^= rows[j];
  return pivots;
}

}  // namespace gf2

Mat rref(const Mat& m, int* rank_out) {
  if (gf2::packable(m)) {
    std::vector<uint64_t> rows = gf2::pack_rows(m);
    std::vector<int> pivots = gf2::rref_packed(rows);
    if (rank_out) *rank_out = static_cast<int>(pivots.size());
    rows.resize(m.rows(), 0);  // keep shape: zero rows at the bottom
    return gf2::unpack(m.field(), rows, m.cols());
  }
  return detail::rref_generic(m, rank_out);
}

int rank(const Mat& m) {
  if (gf2::packable(m)) {
    std::vector<uint64_t> rows = gf2::pack_rows(m);
    return gf2::rank_packed(rows.data(), static_cast<int>(rows.size()));
  }
  return detail::rank_generic(m);
}

PivotVector pivot(const Mat& m) {
  int r = 0;
  Mat a = rref(m, &r);
  PivotVector pv;
  pv.bits.assign(m.cols(), 0);
  int row = 0;
  for (int c = 0; c < a.cols() && row < r; ++c) {
    if (a.at(row, c) != 0) {
      pv.bits[c] = 1;
      ++row;
    }
  }
  pv.weight = r;
  return pv;
}

Mat hconcat(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || &a.field() != &b.field())
    throw std::invalid_argument("hconcat: row count or field mismatch");
  Mat m(a.field(), a.rows(), a.cols() + b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) m.set(i, j, a.at(i, j));
    for (int j = 0; j < b.cols(); ++j) m.set(i, a.cols() + j, b.at(i, j));
  }
  return m;
}

Mat vconcat(const Mat& a, const Mat& b) {
  if (a.cols() != b.cols() || &a.field() != &b.field())
    throw std::invalid_argument("vconcat: column count or field mismatch");
  Mat m(a.field(), a.rows() + b.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) m.set(i, j, a.at(i, j));
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) m.set(a.rows() + i, j, b.at(i, j));
  return m;
}

Mat transpose(const Mat& m) {
  Mat t(m.field(), m.cols(), m.rows());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) t.set(j, i, m.at(i, j));
  return t;
}

Mat add(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || &a.field() != &b.field())
    throw std::invalid_argument("add: shape or field mismatch");
  const FieldContext& f = a.field();
  Mat m(f, a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) m.set(i, j, f.add(a.at(i, j), b.at(i, j)));
  return m;
}

Mat sub(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || &a.field() != &b.field())
    throw std::invalid_argument("sub: shape or field mismatch");
  const FieldContext& f = a.field();
  Mat m(f, a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) m.set(i, j, f.sub(a.at(i, j), b.at(i, j)));
  return m;
}

Mat mul(const Mat& a, const Mat& b) {
  if (a.cols() != b.rows() || &a.field() != &b.field())
    throw std::invalid_argument("mul: inner dimension or field mismatch");
  const FieldContext& f = a.field();
  Mat m(f, a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int l = 0; l < a.cols(); ++l) {
      uint8_t v = a.at(i, l);
      if (v == 0) continue;
      for (int j = 0; j < b.cols(); ++j)
        m.set(i, j, f.add(m.at(i, j), f.mul(v, b.at(l, j))));
    }
  }
  return m;
}

int hamming_distance(const std::vector<uint8_t>& x, const std::vector<uint8_t>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("hamming_distance: length mismatch");
  int d = 0;
  for (size_t i = 0; i < x.size(); ++i) d += (x[i] != y[i]);
  return d;
}

int hamming_weight(const std::vector<uint8_t>& x) {
  int w = 0;
  for (uint8_t v : x) w += (v != 0);
  return w;
}

}  // namespace cdc
