#include "cdc/verify.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <climits>
#include <random>
#include <vector>

#include "cdc/errors.hpp"
#include "cdc/matrix.hpp"

#include "json.hpp"

namespace cdc {

namespace {

using nlohmann::json;

json report_to_json_obj(const VerifyReport& r) {
  json j;
  j["format_version"] = 1;
  j["kind"] = r.kind;
  j["q"] = r.q;
  if (r.kind == "cdc") {
    j["v"] = r.v;
    j["k"] = r.k;
  } else {
    j["a"] = r.a;
    j["b"] = r.b;
    j["u"] = r.u_claimed ? json(*r.u_claimed) : json(nullptr);
  }
  j["d"] = r.d_claimed;
  j["n_words"] = r.n_words;
  j["mode"] = r.mode;
  if (r.mode == "sampled") {
    j["sample_pairs"] = r.sample_pairs;
    j["seed"] = r.seed;
  }
  j["pairs_checked"] = r.pairs_checked;
  j["pairs_skipped_by_filter"] = r.pairs_skipped_by_filter;
  j["min_distance_observed"] =
      r.min_distance_observed ? json(*r.min_distance_observed) : json(nullptr);
  j["certified"] = r.certified;
  j["falsified"] = r.falsified;
  if (r.counterexample_pair) {
    j["counterexample"] = json::array({r.counterexample_pair->first, r.counterexample_pair->second});
  } else {
    j["counterexample"] = nullptr;
  }
  if (r.kind == "rmc") {
    if (r.rank_cap_violation_word) {
      j["rank_cap_violation"] = {{"word", *r.rank_cap_violation_word},
                                 {"rank", *r.rank_cap_violation_rank}};
    } else {
      j["rank_cap_violation"] = nullptr;
    }
  }
  return j;
}

// Packed per-word state for the GF(2) fast path: RREF rows as bit masks plus
// the pivot-column mask.
struct PackedWord {
  std::vector<uint64_t> rows;
  uint64_t piv = 0;
};

PackedWord pack_word(const Subspace& s) {
  PackedWord w;
  w.rows = gf2::pack_rows(s.basis());
  PivotVector pv = s.pivots();
  for (size_t c = 0; c < pv.bits.size(); ++c)
    if (pv.bits[c]) w.piv |= uint64_t{1} << c;
  return w;
}

// Subspace distance of two packed words: reduce y's rows against x's RREF
// rows (distinct pivots, single pass suffices) and against the surviving
// independent rows accumulated so far.
int packed_pair_distance(const PackedWord& x, const PackedWord& y) {
  std::array<uint64_t, 64> acc;
  int extra = 0;
  for (uint64_t w : y.rows) {
    for (uint64_t xr : x.rows) {
      if (w & (xr & (~xr + 1))) w ^= xr;
    }
    for (int e = 0; e < extra && w; ++e) {
      uint64_t ar = acc[e];
      if (w & (ar & (~ar + 1))) w ^= ar;
    }
    if (w) acc[extra++] = w;
  }
  const int kx = static_cast<int>(x.rows.size());
  const int ky = static_cast<int>(y.rows.size());
  return kx + 2 * extra - ky;
}

struct PairLoopResult {
  uint64_t checked = 0;
  uint64_t skipped = 0;
  int min_dist = INT_MAX;
  bool falsified = false;
  std::pair<uint64_t, uint64_t> counterexample{0, 0};
};

// Canonical-order pair scan. `bound` must be a lower bound on `dist`; pairs
// whose bound already reaches the running minimum cannot change it and cannot
// be the first violation (the first violating pair is always reached while
// the running minimum is still >= the claimed distance, and its bound sits
// below that), so skipping them preserves both outputs exactly.
template <typename BoundFn, typename DistFn>
PairLoopResult scan_pairs(uint64_t n, int d_claimed, const VerifyOptions& opt, BoundFn bound,
                          DistFn dist) {
  PairLoopResult res;
  for (uint64_t i = 0; i + 1 < n; ++i) {
    for (uint64_t j = i + 1; j < n; ++j) {
      if (opt.use_pivot_filter && bound(i, j) >= res.min_dist) {
        ++res.skipped;
        continue;
      }
      const int d = dist(i, j);
      ++res.checked;
      res.min_dist = std::min(res.min_dist, d);
      if (d < d_claimed && !res.falsified) {
        res.falsified = true;
        res.counterexample = {i, j};
        if (opt.early_exit) return res;
      }
    }
  }
  return res;
}

void apply_loop_result(VerifyReport& rep, const PairLoopResult& res, bool exhaustive) {
  rep.pairs_checked = res.checked;
  rep.pairs_skipped_by_filter = res.skipped;
  if (res.min_dist != INT_MAX) rep.min_distance_observed = res.min_dist;
  rep.falsified = res.falsified;
  if (res.falsified) rep.counterexample_pair = res.counterexample;
  rep.certified = exhaustive && !res.falsified;
}

VerifyReport make_cdc_report(const SubspaceSource& code, int d_claimed) {
  VerifyReport rep;
  rep.kind = "cdc";
  rep.q = code.q();
  rep.v = code.ambient();
  rep.k = code.dim();
  rep.d_claimed = d_claimed;
  rep.n_words = code.size();
  return rep;
}

bool cdc_packable(const SubspaceSource& code, const VerifyOptions& opt) {
  return !opt.force_generic && code.q() == 2 && code.ambient() <= 64;
}

}  // namespace

std::string VerifyReport::to_json() const { return report_to_json_obj(*this).dump(2); }

VerifyReport verify_cdc(const SubspaceSource& code, int d_claimed, const VerifyOptions& opt) {
  VerifyReport rep = make_cdc_report(code, d_claimed);
  rep.mode = "exhaustive";
  const uint64_t n = code.size();
  if (n > opt.max_words_exhaustive) {
    throw BudgetError("exhaustive verification of " + std::to_string(n) +
                      " words exceeds the cap of " + std::to_string(opt.max_words_exhaustive) +
                      "; use sampled mode");
  }
  if (n < 2) {
    rep.certified = true;
    return rep;
  }

  PairLoopResult res;
  if (cdc_packable(code, opt)) {
    std::vector<PackedWord> words(n);
    for (uint64_t i = 0; i < n; ++i) words[i] = pack_word(code.word(i));
    res = scan_pairs(
        n, d_claimed, opt,
        [&](uint64_t i, uint64_t j) { return std::popcount(words[i].piv ^ words[j].piv); },
        [&](uint64_t i, uint64_t j) { return packed_pair_distance(words[i], words[j]); });
  } else {
    std::vector<Subspace> words;
    words.reserve(n);
    for (uint64_t i = 0; i < n; ++i) words.push_back(code.word(i));
    res = scan_pairs(
        n, d_claimed, opt,
        [&](uint64_t i, uint64_t j) { return pivot_distance_lower_bound(words[i], words[j]); },
        [&](uint64_t i, uint64_t j) { return subspace_distance(words[i], words[j]); });
  }
  apply_loop_result(rep, res, /*exhaustive=*/true);
  return rep;
}

VerifyReport verify_cdc(const CDCCode& code, const VerifyOptions& opt) {
  CdcSourceView view(code);
  return verify_cdc(view, code.d_claimed(), opt);
}

VerifyReport verify_cdc_sampled(const SubspaceSource& code, int d_claimed, uint64_t n_pairs,
                                uint64_t seed, const VerifyOptions& opt) {
  VerifyReport rep = make_cdc_report(code, d_claimed);
  rep.mode = "sampled";
  rep.sample_pairs = n_pairs;
  rep.seed = seed;
  const uint64_t n = code.size();
  if (n < 2) return rep;

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<uint64_t> pick(0, n - 1);
  const bool packed = cdc_packable(code, opt);
  PairLoopResult res;
  for (uint64_t t = 0; t < n_pairs; ++t) {
    uint64_t i = pick(rng);
    uint64_t j = pick(rng);
    while (j == i) j = pick(rng);
    if (i > j) std::swap(i, j);
    int d;
    if (packed) {
      const PackedWord wi = pack_word(code.word(i));
      const PackedWord wj = pack_word(code.word(j));
      d = packed_pair_distance(wi, wj);
    } else {
      d = subspace_distance(code.word(i), code.word(j));
    }
    ++res.checked;
    res.min_dist = std::min(res.min_dist, d);
    if (d < d_claimed && !res.falsified) {
      res.falsified = true;
      res.counterexample = {i, j};
      if (opt.early_exit) break;
    }
  }
  apply_loop_result(rep, res, /*exhaustive=*/false);
  return rep;
}

namespace {

VerifyReport make_rmc_report(const RankCode& code) {
  VerifyReport rep;
  rep.kind = "rmc";
  rep.q = code.q();
  rep.a = code.a();
  rep.b = code.b();
  rep.u_claimed = code.u_claimed();
  rep.d_claimed = code.d_claimed();
  rep.n_words = code.size();
  return rep;
}

int word_rank(const Mat& m, bool force_generic) {
  if (force_generic) return detail::rank_generic(m);
  return rank(m);
}

// First word whose rank exceeds the claimed cap, if any.
void check_rank_cap(const RankCode& code, bool force_generic, VerifyReport& rep) {
  if (!code.u_claimed()) return;
  const int u = *code.u_claimed();
  for (size_t i = 0; i < code.size(); ++i) {
    const int r = word_rank(code.words()[i], force_generic);
    if (r > u) {
      rep.rank_cap_violation_word = i;
      rep.rank_cap_violation_rank = r;
      rep.falsified = true;
      return;
    }
  }
}

}  // namespace

VerifyReport verify_rmc(const RankCode& code, const VerifyOptions& opt) {
  VerifyReport rep = make_rmc_report(code);
  rep.mode = "exhaustive";
  const uint64_t n = code.size();
  if (n > opt.max_words_exhaustive) {
    throw BudgetError("exhaustive verification of " + std::to_string(n) +
                      " words exceeds the cap of " + std::to_string(opt.max_words_exhaustive) +
                      "; use sampled mode");
  }
  check_rank_cap(code, opt.force_generic, rep);
  if (rep.falsified && opt.early_exit) return rep;
  if (n < 2) {
    rep.certified = !rep.falsified;
    return rep;
  }

  VerifyOptions pair_opt = opt;
  pair_opt.use_pivot_filter = false;  // no pivot structure on plain matrices
  PairLoopResult res = scan_pairs(
      n, code.d_claimed(), pair_opt, [](uint64_t, uint64_t) { return 0; },
      [&](uint64_t i, uint64_t j) {
        return word_rank(sub(code.words()[i], code.words()[j]), opt.force_generic);
      });
  const bool had_rank_violation = rep.falsified;
  apply_loop_result(rep, res, /*exhaustive=*/true);
  if (had_rank_violation) {
    rep.falsified = true;
    rep.certified = false;
  }
  return rep;
}

VerifyReport verify_rmc_sampled(const RankCode& code, uint64_t n_pairs, uint64_t seed,
                                const VerifyOptions& opt) {
  VerifyReport rep = make_rmc_report(code);
  rep.mode = "sampled";
  rep.sample_pairs = n_pairs;
  rep.seed = seed;
  const uint64_t n = code.size();
  if (n < 2) return rep;

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<uint64_t> pick(0, n - 1);
  PairLoopResult res;
  for (uint64_t t = 0; t < n_pairs; ++t) {
    uint64_t i = pick(rng);
    uint64_t j = pick(rng);
    while (j == i) j = pick(rng);
    if (i > j) std::swap(i, j);
    const int d = word_rank(sub(code.words()[i], code.words()[j]), opt.force_generic);
    ++res.checked;
    res.min_dist = std::min(res.min_dist, d);
    if (d < code.d_claimed() && !res.falsified) {
      res.falsified = true;
      res.counterexample = {i, j};
      if (opt.early_exit) break;
    }
  }
  apply_loop_result(rep, res, /*exhaustive=*/false);
  return rep;
}

std::optional<std::string> rank_code_structure_violation(const RankCode& code) {
  if (code.size() < 2) return std::nullopt;
  const int d = code.d_claimed();
  const int u = code.u_claimed() ? *code.u_claimed() : std::min(code.a(), code.b());
  const int lo = std::max(0, d - u);

  std::vector<int> ranks(code.size());
  int below_half = 0;
  for (size_t i = 0; i < code.size(); ++i) {
    ranks[i] = rank(code.words()[i]);
    if (ranks[i] < lo || ranks[i] > u) {
      return "word " + std::to_string(i) + " has rank " + std::to_string(ranks[i]) +
             " outside [" + std::to_string(lo) + ", " + std::to_string(u) + "]";
    }
    if (2 * ranks[i] < d) ++below_half;
  }
  if (below_half > 1) {
    return std::to_string(below_half) + " words have rank below half the minimum distance";
  }
  for (size_t i = 0; i < code.size(); ++i) {
    for (size_t j = i + 1; j < code.size(); ++j) {
      const int dist = rank(sub(code.words()[i], code.words()[j]));
      if (dist > 2 * u) {
        return "pair (" + std::to_string(i) + ", " + std::to_string(j) + ") has rank distance " +
               std::to_string(dist) + " above twice the rank cap";
      }
    }
  }
  return std::nullopt;
}

}  // namespace cdc
