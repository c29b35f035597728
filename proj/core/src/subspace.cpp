#include "cdc/subspace.hpp"

#include <algorithm>
#include <stdexcept>

namespace cdc {

Subspace Subspace::from_full_rank(const Mat& m) {
  int r = 0;
  Mat b = rref(m, &r);
  if (r != m.rows()) throw std::invalid_argument("basis matrix does not have full row rank");
  return Subspace(std::move(b));
}

Subspace Subspace::from_span(const Mat& m) {
  int r = 0;
  Mat b = rref(m, &r);
  Mat top(m.field(), r, m.cols());
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < m.cols(); ++j) top.set(i, j, b.at(i, j));
  return Subspace(std::move(top));
}

Subspace Subspace::from_rref_unchecked(Mat m) { return Subspace(std::move(m)); }

PivotVector Subspace::pivots() const {
  // The basis is already reduced; read pivots off directly.
  PivotVector pv;
  pv.bits.assign(basis_.cols(), 0);
  int row = 0;
  for (int c = 0; c < basis_.cols() && row < basis_.rows(); ++c) {
    if (basis_.at(row, c) != 0) {
      pv.bits[c] = 1;
      ++row;
    }
  }
  pv.weight = basis_.rows();
  return pv;
}

Subspace complement(const Subspace& u) {
  // Kernel of the basis map: for RREF basis B with pivot columns p_1..p_k,
  // each free column c yields the vector with 1 at c and -B[r][c] at each
  // pivot column p_r.
  const Mat& b = u.basis();
  const FieldContext& f = b.field();
  const int v = b.cols(), k = b.rows();
  PivotVector pv = u.pivots();
  std::vector<int> pivot_cols;
  for (int c = 0; c < v; ++c)
    if (pv.bits[c]) pivot_cols.push_back(c);
  Mat ker(f, v - k, v);
  int row = 0;
  for (int c = 0; c < v; ++c) {
    if (pv.bits[c]) continue;
    ker.set(row, c, 1);
    for (int r = 0; r < k; ++r) ker.set(row, pivot_cols[r], f.neg(b.at(r, c)));
    ++row;
  }
  return Subspace::from_full_rank(ker);
}

int subspace_distance(const Subspace& u, const Subspace& w) {
  if (u.ambient() != w.ambient() || &u.field() != &w.field())
    throw std::invalid_argument("subspace_distance: ambient space mismatch");
  int r = rank(vconcat(u.basis(), w.basis()));
  return 2 * r - u.dim() - w.dim();
}

int rank_distance(const Mat& a, const Mat& b) { return rank(sub(a, b)); }

int pivot_distance_lower_bound(const Subspace& u, const Subspace& w) {
  if (u.ambient() != w.ambient())
    throw std::invalid_argument("pivot bound: ambient space mismatch");
  return hamming_distance(u.pivots().bits, w.pivots().bits);
}

CDCCode::CDCCode(int q, int v, int k, int d_claimed, std::vector<Subspace> words)
    : q_(q), v_(v), k_(k), d_(d_claimed), words_(std::move(words)) {
  for (const Subspace& s : words_) {
    if (s.ambient() != v || s.dim() != k || s.field().q() != q)
      throw std::invalid_argument("codeword does not match code parameters");
  }
  std::sort(words_.begin(), words_.end());
  words_.erase(std::unique(words_.begin(), words_.end()), words_.end());
}

RankCode::RankCode(int q, int a, int b, int d_claimed, std::optional<int> u_claimed,
                   std::vector<Mat> words)
    : q_(q), a_(a), b_(b), d_(d_claimed), u_(u_claimed), words_(std::move(words)) {
  for (const Mat& m : words_) {
    if (m.rows() != a || m.cols() != b || m.field().q() != q)
      throw std::invalid_argument("codeword does not match code parameters");
  }
  std::sort(words_.begin(), words_.end());
  words_.erase(std::unique(words_.begin(), words_.end()), words_.end());
}

}  // namespace cdc
