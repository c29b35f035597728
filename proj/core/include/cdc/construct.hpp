#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "cdc/plan.hpp"
#include "cdc/subspace.hpp"
#include "cdc/verify.hpp"

namespace cdc {

// Row space of (I_k | 0), the canonical single k-subspace of GF(q)^v.
Subspace trivial_subspace(int q, int v, int k);
CDCCode build_trivial(int q, int v, int k, int d);

// Pairwise trivially intersecting k-subspaces covering every point of
// GF(q)^v, built from the one-dimensional subspaces of GF(q^k)^{v/k};
// requires k | v. Distance 2k, size (q^v-1)/(q^k-1).
CDCCode build_spread(int q, int v, int k);

// {row space of (I | R)}: prepending an identity block turns rank distance d
// into subspace distance 2d.
CDCCode lift_rmc(const RankCode& rmc);

// Orthogonal complement of every word: same ambient and distance, dimension
// v - k.
CDCCode complement_code(const CDCCode& code);

// Sufficient conditions for two concatenated words to be far apart, checked
// in order: equal-dimension full-rank left blocks that are far as subspaces;
// identical full-rank left blocks with far right blocks; a rank gap of at
// least d/2 between the left blocks.
enum class MainCase { cdc_part, rmc_part, rank_gap, none };
MainCase lemma_main_case(const Mat& A, const Mat& B, const Mat& C, const Mat& D, int d);

// Constant-rank code of a-by-b matrices: outer products of paired members of
// two spreads of u-subspaces (requires u | a, u | b, d <= 2u). Pairwise rank
// distance is 2u >= d and every word has rank exactly u.
std::vector<Mat> product_rrmc(int q, int a, int b, int d, int u);

// Materialize a rank-metric ingredient recipe.
std::vector<Mat> realize_rmc(const RmcSpec& spec, uint64_t max_enumeration = uint64_t{1} << 24);

// Two-block linkage: {(tau(A) | M)} u {(R | tau(B))} over GF(q)^{r+s}.
// A is a CDC on r dims, B on s+t dims, M holds k-by-s matrices of rank
// distance >= d/2, R holds k-by-(r-t) matrices of rank at most k-d/2-t.
// Throws ConstraintError naming the violated inequality.
CDCCode construct_generalized_linkage(int q, int d, int k, int r, int s, int t, const CDCCode& A,
                                      const CDCCode& B, const std::vector<Mat>& M,
                                      const std::vector<Mat>& R);

// m-block chain over GF(q)^{sum n_i}. Subcode i (0-based) assembles
// R_0 | ... | R_{i-2} | S_{i-1} | tau(A_i) | M_{i+1} | ... | M_{m-1}, where
// tau(A_i) also covers the last t_i columns of block i-1. Vectors are indexed
// by owning block; unused slots (M[0], R[m-2..], S[m-1]) are ignored.
CDCCode construct_multiblock(int q, int d, int k, const std::vector<int>& n,
                             const std::vector<int>& t, const std::vector<CDCCode>& A,
                             const std::vector<std::vector<Mat>>& M,
                             const std::vector<std::vector<Mat>>& R,
                             const std::vector<std::vector<Mat>>& S);

struct ConstructOptions {
  uint64_t max_words = uint64_t{1} << 20;
  uint64_t max_rmc_enumeration = uint64_t{1} << 24;
};

// Recursive plan execution. The result has exactly plan.size words (a
// mismatch is a hard logic error) and the plan's (q, v, k, d).
CDCCode construct_from_plan(const PlanNode& plan, const ConstructOptions& opt = {});

// Word-at-a-time access to a two-block linkage code whose total size exceeds
// the materialization budget; ingredients are materialized, assembled words
// are not. Suitable for sampled verification of multi-million-word codes.
std::unique_ptr<SubspaceSource> make_linkage_source(const PlanNode& plan,
                                                    const ConstructOptions& opt = {});

}  // namespace cdc
