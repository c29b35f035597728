#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "cdc/subspace.hpp"

namespace cdc {

// Read-only random access to the words of a constant-dimension code. Large
// construction outputs implement this lazily so sampled verification never
// needs the whole code in memory.
class SubspaceSource {
 public:
  virtual ~SubspaceSource() = default;
  virtual size_t size() const = 0;
  virtual Subspace word(size_t i) const = 0;
  virtual int q() const = 0;
  virtual int ambient() const = 0;
  virtual int dim() const = 0;
};

class CdcSourceView final : public SubspaceSource {
 public:
  explicit CdcSourceView(const CDCCode& c) : c_(&c) {}
  size_t size() const override { return c_->size(); }
  Subspace word(size_t i) const override { return c_->words()[i]; }
  int q() const override { return c_->q(); }
  int ambient() const override { return c_->v(); }
  int dim() const override { return c_->k(); }

 private:
  const CDCCode* c_;
};

struct VerifyOptions {
  // Skip the rank computation for a pair whose pivot Hamming bound already
  // exceeds every value that could still lower the observed minimum. Sound by
  // the pivot-distance lower bound; the reported minimum is exact either way.
  bool use_pivot_filter = true;
  // Stop at the first violating pair; the reported minimum then reflects only
  // the pairs seen so far. Off by default so reports double as experiment
  // data.
  bool early_exit = false;
  // Force the generic elimination route even where the packed GF(2) path
  // applies (used to pin the two routes against each other).
  bool force_generic = false;
  // Exhaustive verification materializes per-word state; refuse above this.
  uint64_t max_words_exhaustive = uint64_t{1} << 20;
};

struct VerifyReport {
  std::string kind;  // "cdc" | "rmc"
  int q = 0;
  // cdc params
  int v = 0, k = 0;
  // rmc params
  int a = 0, b = 0;
  std::optional<int> u_claimed;
  int d_claimed = 0;
  uint64_t n_words = 0;

  std::string mode;  // "exhaustive" | "sampled"
  uint64_t sample_pairs = 0;
  uint64_t seed = 0;

  uint64_t pairs_checked = 0;
  uint64_t pairs_skipped_by_filter = 0;
  // Smallest distance among examined pairs; absent when fewer than two words
  // (the minimum of an empty set, reported as null).
  std::optional<int> min_distance_observed;

  bool certified = false;  // exhaustive only: claimed minimum distance holds
  bool falsified = false;  // a concrete violation was found
  std::optional<std::pair<uint64_t, uint64_t>> counterexample_pair;
  std::optional<uint64_t> rank_cap_violation_word;  // rmc only
  std::optional<int> rank_cap_violation_rank;

  std::string to_json() const;
};

// Exhaustive pairwise verification in the canonical word order.
VerifyReport verify_cdc(const SubspaceSource& code, int d_claimed,
                        const VerifyOptions& opt = {});
VerifyReport verify_cdc(const CDCCode& code, const VerifyOptions& opt = {});

// Sampled verification: n_pairs uniformly random distinct pairs from a seeded
// generator. Falsifies only; it never certifies.
VerifyReport verify_cdc_sampled(const SubspaceSource& code, int d_claimed, uint64_t n_pairs,
                                uint64_t seed, const VerifyOptions& opt = {});

VerifyReport verify_rmc(const RankCode& code, const VerifyOptions& opt = {});
VerifyReport verify_rmc_sampled(const RankCode& code, uint64_t n_pairs, uint64_t seed,
                                const VerifyOptions& opt = {});

// Structural facts that hold for any rank-restricted code with at least two
// words once its distance claim is verified: every word rank lies in
// [d - u, u], at most one word has rank below d/2, and pairwise distances
// never exceed 2u. Returns the violated condition, or nullopt if all hold.
std::optional<std::string> rank_code_structure_violation(const RankCode& code);

}  // namespace cdc
