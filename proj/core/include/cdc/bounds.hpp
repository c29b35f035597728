#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "cdc/bigint.hpp"
#include "cdc/lambda.hpp"
#include "cdc/plan.hpp"

namespace cdc {

// Exact floor of [v, k-d/2+1]_q / [k, k-d/2+1]_q, the packing upper bound
// from counting (k-d/2+1)-subspaces. Requires 2 <= d/2 <= k <= v, d even.
BigCount anticode_upper(int q, int v, int d, int k);

// (q, v, d, min(k, v-k)): complements preserve pairwise subspace distance, so
// the two parameter sets share their extremal value. Requires d even and
// 2 <= d/2 <= k <= v.
std::tuple<int, int, int, int> normalize_key(int q, int v, int d, int k);

// Externally supplied lower-bound values. Always includes the built-in
// recursive value q^12 + q^2 (q^2+1)^2 (q^2+q+1) + 1 for ambient 8, distance
// 4, dimension 4 at every q; loaded seeds may only raise entries and must not
// exceed the anticode upper bound (a load error).
class SeedSet {
 public:
  struct Seed {
    int q = 0, v = 0, d = 0, k = 0;
    BigCount lower;
    std::string source;
  };

  SeedSet() = default;
  static SeedSet from_json(const std::string& text);  // throws ParseError
  static SeedSet from_json_file(const std::string& path);

  void add(Seed seed);  // throws ParseError if the seed exceeds the anticode bound
  std::optional<Seed> find(int q, int v, int d, int k) const;
  size_t size() const { return seeds_.size(); }

 private:
  std::map<std::tuple<int, int, int, int>, Seed> seeds_;
};

struct BoundEntry {
  int q = 0, v = 0, d = 0, k = 0;  // normalized key
  BigCount lower = 1;
  std::string lower_provenance;  // winning construction tag with parameters
  PlanPtr lower_plan;            // set when the bound is achieved constructibly
  BigCount upper = 1;
  std::string upper_provenance;  // anticode | spread_exact | trivial
  bool exact = false;
};

struct CompareRow {
  std::string construction;
  int r = 0, s = 0, t = 0;        // two-block split, when applicable
  std::vector<int> blocks, hang;  // multiblock composition, when applicable
  BigCount value;
  std::string formula;  // evaluated breakdown, e.g. "4801*4096 + 1*8926"
};

struct CompareReport {
  int q = 0, v = 0, d = 0, k = 0;
  std::vector<CompareRow> rows;

  // Largest row carrying the given construction tag; nullptr when absent.
  const CompareRow* best(const std::string& construction) const;
  std::string to_json() const;
};

// Memoized best-known lower and upper bounds for the extremal code sizes
// A_q(v, d; k), over all implemented constructions and formulas, with
// provenance. One engine instance corresponds to one seed environment.
class BoundsEngine {
 public:
  explicit BoundsEngine(SeedSet seeds = SeedSet());

  const SeedSet& seeds() const { return seeds_; }

  // Accepts any 0 <= k <= v and even d; normalizes internally.
  const BoundEntry& entry(int q, int v, int d, int k);
  BigCount aq_lower(int q, int v, int d, int k);
  BigCount aq_upper(int q, int v, int d, int k);

  // Lower = exact closed form when available, else the best of the MRD
  // rank-<=u subset, the ambient sweep, and the constant-rank pairing bound;
  // upper from the puncturing census/recursion.
  const LambdaBounds& lambda(int q, int a, int b, int d, int u);

  // One entry per ambient size v in [k, v_max]. Pointers into the memo table,
  // valid for the engine's lifetime.
  std::vector<const BoundEntry*> compute_table(int q, int d, int k, int v_max);

  // Per-construction, per-split breakdown at one key (all admissible
  // two-block splits, block compositions up to m = 3, single-row formulas).
  CompareReport compare_constructions(int q, int v, int d, int k);

  // Formula values of the two parallel-type constructions on ambient n + 2k,
  // sharing one Lambda factor: {identity-block form, two-factor form}. The
  // first is never smaller; strictly larger iff 0 < n < k.
  std::pair<BigCount, BigCount> parallel_pair(int q, int k, int d, int n);

  // Best plan materializable end to end (every ingredient constructible),
  // with its cardinality; requires d >= 4 even. May be weaker than
  // entry().lower when the table value rests on a seed or a pure formula.
  const PlanNode& constructible_plan(int q, int v, int d, int k);

 private:
  struct CEntry {
    BigCount size = 0;
    PlanPtr plan;
  };
  using Key = std::tuple<int, int, int, int>;

  const BoundEntry& compute_entry(const Key& key);
  const CEntry& compute_constructible(int q, int v, int d, int k);

  SeedSet seeds_;
  std::map<Key, BoundEntry> entries_;
  std::map<Key, CEntry> centries_;
  std::map<std::tuple<int, int, int, int, int>, LambdaBounds> lambdas_;
  std::set<Key> in_progress_;
  std::set<Key> c_in_progress_;
};

// Table export; columns q,v,d,k,lower,upper,exact,provenance.
std::string table_to_csv(const std::vector<const BoundEntry*>& rows);
std::string table_to_json(const std::vector<const BoundEntry*>& rows);

}  // namespace cdc
