#pragma once

#include <memory>
#include <string>
#include <vector>

#include "cdc/bigint.hpp"

namespace cdc {

// Recipe for a rank-metric ingredient of a linkage step. All variants are
// fully determined by their parameters, so a spec carries no word data.
struct RmcSpec {
  enum class Kind {
    zero,          // the single all-zero word
    empty_cols,    // zero-column shape; one (empty) word
    mrd,           // full maximum-rank-distance code, a x b, distance d
    delta_subset,  // words of the MRD code with rank at most u
    product,       // outer products of paired spread words, rank exactly u
  };
  Kind kind = Kind::zero;
  int q = 0, a = 0, b = 0;
  int d = 0;  // minimum rank distance
  int u = 0;  // rank cap (min(a, b) when unrestricted)

  BigCount predicted_size() const;
  std::string kind_name() const;
};

// A construction plan: a tree whose leaves are closed-form codes and whose
// inner nodes combine child codes and rank-metric ingredients. Executing a
// plan yields a constant-dimension code with the node's (q, v, k, d) and
// exactly `size` words.
struct PlanNode {
  enum class Kind {
    trivial,              // the single word spanned by the leading unit vectors
    spread,               // k | v, pairwise trivially intersecting cover
    lifted_mrd,           // prepend an identity block to each MRD word
    linkage_original,     // two-block linkage, zero lower-left block
    linkage_improved,     // linkage with the second code widened by k - d/2
    linkage_parallel_ti,  // identity first block, rank-restricted lower-left
    linkage_generalized,  // full two-block form with hang parameter t
    linkage_multiblock,   // m-block chain with per-block hang t_i
    complement,           // orthogonal complement of every word of the child
  };
  Kind kind = Kind::trivial;
  int q = 0, v = 0, k = 0, d = 0;
  BigCount size = 0;

  // two-block linkage parameters: v = r + s, second code lives on s + t
  // columns, the lower-left ingredient on r - t columns
  int r = 0, s = 0, t = 0;

  // multiblock parameters
  std::vector<int> block_sizes;  // n_1..n_m, summing to v
  std::vector<int> block_hang;   // t_1..t_m, t_1 = 0

  std::vector<std::unique_ptr<PlanNode>> children;
  // linkage_*: [M, R]; lifted_mrd: [M]; multiblock: [M_1..M_m, R_1..R_m,
  // S_1..S_m] with zero-kind placeholders in unused slots.
  std::vector<RmcSpec> rmcs;

  std::string kind_name() const;
};

using PlanPtr = std::unique_ptr<PlanNode>;

PlanPtr clone_plan(const PlanNode& node);

std::string plan_to_json(const PlanNode& root);
PlanPtr plan_from_json(const std::string& text);

}  // namespace cdc
