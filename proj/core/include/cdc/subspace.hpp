#pragma once

#include <optional>
#include <vector>

#include "cdc/matrix.hpp"

namespace cdc {

// A k-dimensional subspace of GF(q)^v, stored as its unique reduced row
// echelon basis (k x v, full row rank). The RREF basis is the canonical
// identifier: two Subspace values are equal iff they are the same subspace.
class Subspace {
 public:
  // Canonicalizes a spanning matrix that is required to have full row rank
  // (the usual way codewords arise from constructions). Throws if rank(m)
  // is less than m.rows().
  static Subspace from_full_rank(const Mat& m);

  // Canonicalizes an arbitrary spanning set; the dimension is the rank.
  static Subspace from_span(const Mat& m);

  // Accepts a matrix already in RREF with full row rank, unchecked beyond a
  // cheap structural sanity pass (used on hot paths where the producer
  // guarantees canonical form).
  static Subspace from_rref_unchecked(Mat m);

  int ambient() const { return basis_.cols(); }
  int dim() const { return basis_.rows(); }
  const Mat& basis() const { return basis_; }
  const FieldContext& field() const { return basis_.field(); }
  PivotVector pivots() const;

  bool operator==(const Subspace& o) const { return basis_ == o.basis_; }
  bool operator<(const Subspace& o) const { return basis_ < o.basis_; }

 private:
  explicit Subspace(Mat basis) : basis_(std::move(basis)) {}
  Mat basis_;
};

// Orthogonal complement with respect to the standard bilinear form; subspace
// distances are invariant under this map.
Subspace complement(const Subspace& u);

// Subspace distance 2 rank([U; W]) - dim U - dim W. Requires equal ambient
// spaces (and fields).
int subspace_distance(const Subspace& u, const Subspace& w);

// Rank distance rank(A - B) for equal-shape matrices.
int rank_distance(const Mat& a, const Mat& b);

// Hamming distance of the two pivot vectors; a lower bound for
// subspace_distance(u, w).
int pivot_distance_lower_bound(const Subspace& u, const Subspace& w);

// A constant-dimension code: subspaces of equal dimension k in GF(q)^v with
// a claimed minimum pairwise subspace distance. Words are kept sorted in the
// canonical (basis-lexicographic) order and deduplicated.
class CDCCode {
 public:
  CDCCode(int q, int v, int k, int d_claimed, std::vector<Subspace> words);

  int q() const { return q_; }
  int v() const { return v_; }
  int k() const { return k_; }
  int d_claimed() const { return d_; }
  const std::vector<Subspace>& words() const { return words_; }
  size_t size() const { return words_.size(); }

 private:
  int q_, v_, k_, d_;
  std::vector<Subspace> words_;
};

// A rank-metric code: a x b matrices over GF(q) with a claimed minimum
// pairwise rank distance, and optionally a claimed maximum word rank u
// (a rank-restricted code). Words sorted canonically and deduplicated.
class RankCode {
 public:
  RankCode(int q, int a, int b, int d_claimed, std::optional<int> u_claimed,
           std::vector<Mat> words);

  int q() const { return q_; }
  int a() const { return a_; }
  int b() const { return b_; }
  int d_claimed() const { return d_; }
  std::optional<int> u_claimed() const { return u_; }
  const std::vector<Mat>& words() const { return words_; }
  size_t size() const { return words_.size(); }

 private:
  int q_, a_, b_, d_;
  std::optional<int> u_;
  std::vector<Mat> words_;
};

}  // namespace cdc
