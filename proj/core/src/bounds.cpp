#include "cdc/bounds.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "cdc/construct.hpp"
#include "cdc/errors.hpp"
#include "cdc/field.hpp"
#include "cdc/qcount.hpp"

namespace cdc {

namespace {

std::string key_str(int q, int v, int d, int k) {
  return "(q=" + std::to_string(q) + ", v=" + std::to_string(v) + ", d=" + std::to_string(d) +
         ", k=" + std::to_string(k) + ")";
}

void check_key_domain(int q, int v, int d, int k) {
  FieldContext::get(q);  // validates q is a prime power in range
  if (v < 0 || k < 0 || k > v)
    throw std::invalid_argument("bound key requires 0 <= k <= v, got " + key_str(q, v, d, k));
  if (d < 0 || d % 2 != 0)
    throw std::invalid_argument(
        "subspace distances between equal-dimension subspaces are even; got d = " +
        std::to_string(d));
}

// Size of a k-spread of GF(q)^v, (q^v - 1) / (q^k - 1); requires k | v.
BigCount spread_size(int q, int v, int k) {
  return (big_pow(q, v) - 1) / (big_pow(q, k) - 1);
}

// Built-in external value for ambient 8, distance 4, dimension 4:
// q^12 + q^2 (q^2+1)^2 (q^2+q+1) + 1, from a two-step recursive construction.
BigCount builtin_seed_value(int q) {
  const BigCount q2 = BigCount(q) * q;
  return big_pow(q, 12) + q2 * (q2 + 1) * (q2 + 1) * (q2 + q + 1) + 1;
}

// Conservative stand-in for the Lambda factor of the two parallel-type
// formulas: exact closed form when available, else the count of
// minimum-weight-compatible words of the restricted MRD subset excluding the
// zero word (the evaluation the source tables use for these two formulas).
BigCount lambda_star_conservative(int q, int a, int b, int d, int u) {
  if (std::optional<BigCount> cf = lambda_closed_form(q, a, b, d, u)) return *cf;
  const BigCount delta = delta_bound(q, a, b, d, u);
  return delta > 1 ? BigCount(delta - 1) : BigCount(1);
}

std::string big_str(const BigCount& x) { return x.str(); }

PlanPtr make_leaf(PlanNode::Kind kind, int q, int v, int k, int d, BigCount size) {
  auto node = std::make_unique<PlanNode>();
  node->kind = kind;
  node->q = q;
  node->v = v;
  node->k = k;
  node->d = d;
  node->size = std::move(size);
  return node;
}

}  // namespace

BigCount anticode_upper(int q, int v, int d, int k) {
  if (d % 2 != 0 || d / 2 < 2 || d / 2 > k || k > v)
    throw std::invalid_argument("anticode bound requires even d with 2 <= d/2 <= k <= v, got " +
                                key_str(q, v, d, k));
  const int c = k - d / 2 + 1;
  return q_binomial(q, v, c) / q_binomial(q, k, c);
}

std::tuple<int, int, int, int> normalize_key(int q, int v, int d, int k) {
  if (d % 2 != 0 || d / 2 < 2 || d / 2 > k || k > v)
    throw std::invalid_argument("key normalization requires even d with 2 <= d/2 <= k <= v, got " +
                                key_str(q, v, d, k));
  return {q, v, d, std::min(k, v - k)};
}

// ---------------------------------------------------------------------------
// SeedSet

SeedSet SeedSet::from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("seed file is not valid JSON: ") + e.what());
  }
  SeedSet out;
  try {
    if (!doc.is_object() || !doc.contains("seeds") || !doc["seeds"].is_array())
      throw ParseError("seed file must be an object with a \"seeds\" array");
    for (const auto& item : doc["seeds"]) {
      Seed s;
      s.q = item.at("q").get<int>();
      s.v = item.at("v").get<int>();
      s.d = item.at("d").get<int>();
      s.k = item.at("k").get<int>();
      const auto& lowered = item.at("lower");
      s.lower = BigCount(lowered.is_string() ? lowered.get<std::string>()
                                             : std::to_string(lowered.get<long long>()));
      s.source = item.value("source", std::string("unspecified"));
      out.add(std::move(s));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("seed entry malformed: ") + e.what());
  }
  return out;
}

SeedSet SeedSet::from_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open seed file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str());
}

void SeedSet::add(Seed seed) {
  std::tuple<int, int, int, int> key;
  BigCount cap;
  try {
    key = normalize_key(seed.q, seed.v, seed.d, seed.k);
    cap = anticode_upper(seed.q, seed.v, seed.d, std::get<3>(key));
  } catch (const std::invalid_argument& e) {
    throw ParseError("seed " + key_str(seed.q, seed.v, seed.d, seed.k) + ": " + e.what());
  }
  if (seed.lower > cap)
    throw ParseError("seed " + key_str(seed.q, seed.v, seed.d, seed.k) + " claims " +
                     big_str(seed.lower) + ", exceeding the anticode upper bound " +
                     big_str(cap));
  if (seed.lower < 1)
    throw ParseError("seed " + key_str(seed.q, seed.v, seed.d, seed.k) + " must be at least 1");
  seed.k = std::get<3>(key);
  auto it = seeds_.find(key);
  if (it == seeds_.end() || it->second.lower < seed.lower) seeds_[key] = std::move(seed);
}

std::optional<SeedSet::Seed> SeedSet::find(int q, int v, int d, int k) const {
  std::optional<Seed> best;
  if (v == 8 && d == 4 && std::min(k, v - k) == 4) {
    best = Seed{q, v, d, 4, builtin_seed_value(q), "built-in recursive value"};
  }
  auto it = seeds_.find(std::make_tuple(q, v, d, std::min(k, v - k)));
  if (it != seeds_.end() && (!best || it->second.lower > best->lower)) best = it->second;
  return best;
}

// ---------------------------------------------------------------------------
// BoundsEngine

BoundsEngine::BoundsEngine(SeedSet seeds) : seeds_(std::move(seeds)) {}

BigCount BoundsEngine::aq_lower(int q, int v, int d, int k) { return entry(q, v, d, k).lower; }
BigCount BoundsEngine::aq_upper(int q, int v, int d, int k) { return entry(q, v, d, k).upper; }

const BoundEntry& BoundsEngine::entry(int q, int v, int d, int k) {
  check_key_domain(q, v, d, k);
  const Key key(q, v, d, std::min(k, v - k));
  auto it = entries_.find(key);
  if (it != entries_.end()) return it->second;
  if (!in_progress_.insert(key).second)
    throw std::logic_error("cyclic bound recursion at " + key_str(q, v, d, std::get<3>(key)));
  const BoundEntry& done = compute_entry(key);
  in_progress_.erase(key);
  return done;
}

const BoundEntry& BoundsEngine::compute_entry(const Key& key) {
  const auto [q, v, d, k] = key;
  const int h = d / 2;

  BoundEntry e;
  e.q = q;
  e.v = v;
  e.d = d;
  e.k = k;

  if (k == 0 || d > 2 * k) {
    // No two distinct k-subspaces can be this far apart (or k is forced).
    e.lower = e.upper = 1;
    e.lower_provenance = "trivial";
    e.upper_provenance = "trivial";
    e.lower_plan = make_leaf(PlanNode::Kind::trivial, q, v, k, d, 1);
    e.exact = true;
    return entries_.emplace(key, std::move(e)).first->second;
  }
  if (d <= 2) {
    // Any two distinct equal-dimension subspaces are at distance >= 2.
    e.lower = e.upper = q_binomial(q, v, k);
    e.lower_provenance = "all-subspaces";
    e.upper_provenance = "trivial";
    e.exact = true;
    return entries_.emplace(key, std::move(e)).first->second;
  }

  // Main region: 2 <= d/2 <= k <= v - k.
  BigCount best = 1;
  std::string tag = "trivial";
  const auto consider = [&](const BigCount& val, std::string t) {
    if (val > best) {
      best = val;
      tag = std::move(t);
    }
  };

  if (v % k == 0) consider(spread_size(q, v, k), "spread");
  consider(mrd_size(q, k, v - k, h), "lifted-mrd");

  // Generalized two-block sweep over (r, s, t).
  for (int r = k; r <= v - 1; ++r) {
    const int s = v - r;
    const BigCount a_val = aq_lower(q, r, d, k);
    const BigCount m_val = mrd_size(q, k, s, h);
    for (int t = 0; t <= k - h; ++t) {
      if (k > s + t) continue;
      const BigCount lam = lambda(q, k, r - t, h, k - h - t).lower;
      consider(a_val * m_val + lam * aq_lower(q, s + t, d, k),
               "generalized-linkage r=" + std::to_string(r) + " s=" + std::to_string(s) +
                   " t=" + std::to_string(t));
    }
  }

  // Improved two-block form: full second-code padding, no lower-left block.
  for (int r = k; r <= v - h; ++r) {
    const int s = v - r;
    consider(aq_lower(q, r, d, k) * mrd_size(q, k, s, h) + aq_lower(q, s + k - h, d, k),
             "improved-linkage r=" + std::to_string(r) + " s=" + std::to_string(s));
  }

  // Original two-block form: both codes on their bare blocks.
  for (int r = k; r <= v - k; ++r) {
    const int s = v - r;
    consider(aq_lower(q, r, d, k) * mrd_size(q, k, s, h) + aq_lower(q, s, d, k),
             "original-linkage r=" + std::to_string(r) + " s=" + std::to_string(s));
  }

  // Identity-block parallel forms (shared Lambda factor, conservative value).
  {
    const BigCount lam = lambda_star_conservative(q, k, k, h, k - h);
    const int s = v - k;
    consider(mrd_size(q, k, s, h) + aq_lower(q, s, d, k) * lam,
             "parallel-improved s=" + std::to_string(s));
    const int n = v - 2 * k;
    consider(mrd_size(q, k, n, h) * mrd_size(q, k, k, h) + aq_lower(q, n + k, d, k) * lam,
             "parallel-linkage n=" + std::to_string(n));
  }

  // Near-spread chaining, distance exactly 2k - 2 only.
  if (d == 2 * k - 2 && k >= 3) {
    for (int r = k; r <= v - k + 1; ++r) {
      const int s = v - r;
      consider(aq_lower(q, r, d, k) * mrd_size(q, k, s, k - 1) + aq_lower(q, s, d - 2, k - 1),
               "kurz-linkage r=" + std::to_string(r) + " s=" + std::to_string(s));
    }
  }

  // Three-block chains.
  for (int n0 = 1; n0 <= v - 2; ++n0) {
    for (int n1 = 1; n1 <= v - n0 - 1; ++n1) {
      const int n2 = v - n0 - n1;
      if (k > n0) continue;  // first block carries no hang
      for (int t1 = 0; t1 <= std::min(k - h, n0); ++t1) {
        if (k > n1 + t1) continue;
        for (int t2 = 0; t2 <= std::min(k - h, n1); ++t2) {
          if (k > n2 + t2) continue;
          // A zero-width middle block admits exactly one (empty) matrix.
          auto lam_lower = [&](int b, int u) -> BigCount {
            return b == 0 ? BigCount(1) : lambda(q, k, b, h, u).lower;
          };
          BigCount total = aq_lower(q, n0, d, k) * mrd_size(q, k, n1, h) * mrd_size(q, k, n2, h);
          total += aq_lower(q, n1 + t1, d, k) * lam_lower(n0 - t1, k - h - t1) *
                   mrd_size(q, k, n2, h);
          total += aq_lower(q, n2 + t2, d, k) * lam_lower(n0, k - h) *
                   lam_lower(n1 - t2, k - h - t2);
          consider(total, "multiblock n=" + std::to_string(n0) + "+" + std::to_string(n1) + "+" +
                              std::to_string(n2) + " t=0+" + std::to_string(t1) + "+" +
                              std::to_string(t2));
        }
      }
    }
  }

  if (std::optional<SeedSet::Seed> seed = seeds_.find(q, v, d, k))
    consider(seed->lower, "seed: " + seed->source);

  // A code in a smaller ambient embeds by appending zero coordinates.
  if (v - 1 >= k) consider(aq_lower(q, v - 1, d, k), "monotone from v-1");

  e.lower = best;
  e.lower_provenance = tag;
  e.upper = anticode_upper(q, v, d, k);
  e.upper_provenance = "anticode";
  if (v % k == 0 && spread_size(q, v, k) == e.upper) e.upper_provenance = "spread_exact";
  if (e.lower > e.upper)
    throw std::logic_error("lower bound exceeds upper bound at " + key_str(q, v, d, k) + ": " +
                           big_str(e.lower) + " > " + big_str(e.upper));
  e.exact = e.lower == e.upper;

  const CEntry& c = compute_constructible(q, v, d, k);
  if (c.size == e.lower) e.lower_plan = clone_plan(*c.plan);

  return entries_.emplace(key, std::move(e)).first->second;
}

// ---------------------------------------------------------------------------
// Lambda resolution

const LambdaBounds& BoundsEngine::lambda(int q, int a, int b, int d, int u) {
  if (a < 0 || b < 0 || d < 1 || u < 0)
    throw std::invalid_argument("lambda requires a, b >= 0, d >= 1, u >= 0");
  u = std::min(u, std::min(a, b));
  const auto key = std::make_tuple(q, a, b, d, u);
  auto it = lambdas_.find(key);
  if (it != lambdas_.end()) return it->second;

  LambdaBounds lb;
  lb.q = q;
  lb.a = a;
  lb.b = b;
  lb.d = d;
  lb.u = u;
  if (std::optional<BigCount> cf = lambda_closed_form(q, a, b, d, u)) {
    lb.lower = lb.upper = *cf;
    lb.exact = true;
    lb.lower_source = lb.upper_source = "closed-form";
  } else {
    // Closed form handles 2u < d, so 2u >= d holds from here on.
    lb.lower = delta_bound(q, a, b, d, u);
    lb.lower_source = "rank-restricted MRD subset";
    for (int i = 0; i <= 2 * u - d; ++i) {
      const int amb = std::min(a + i, b + 2 * u - d - i);
      const BigCount cand = aq_lower(q, amb, 2 * u, u);
      if (cand > lb.lower) {
        lb.lower = cand;
        lb.lower_source = "ambient sweep i=" + std::to_string(i);
      }
    }
    for (int d1 = 2; d1 <= 2 * u; d1 += 2) {
      const int d2 = std::max(2, 2 * d - d1);
      const BigCount cand = std::min(aq_lower(q, a, d1, u), aq_lower(q, b, d2, u));
      if (cand > lb.lower) {
        lb.lower = cand;
        lb.lower_source =
            "constant-rank pairing d1=" + std::to_string(d1) + " d2=" + std::to_string(d2);
      }
    }
    lb.upper = lambda_upper_bound(q, a, b, d, u);
    lb.upper_source = "puncturing recursion";
    if (lb.lower > lb.upper)
      throw std::logic_error("lambda lower bound exceeds upper bound at (" + std::to_string(q) +
                             "," + std::to_string(a) + "," + std::to_string(b) + "," +
                             std::to_string(d) + "," + std::to_string(u) + ")");
    lb.exact = lb.lower == lb.upper;
  }
  return lambdas_.emplace(key, std::move(lb)).first->second;
}

// ---------------------------------------------------------------------------
// Constructible plans

const PlanNode& BoundsEngine::constructible_plan(int q, int v, int d, int k) {
  return *compute_constructible(q, v, d, k).plan;
}

const BoundsEngine::CEntry& BoundsEngine::compute_constructible(int q, int v, int d, int k) {
  check_key_domain(q, v, d, k);
  if (d < 4)
    throw std::invalid_argument(
        "constructible plans require distance >= 4 (distance 2 admits every subspace)");
  const Key key(q, v, d, k);
  auto it = centries_.find(key);
  if (it != centries_.end()) return it->second;
  if (!c_in_progress_.insert(key).second)
    throw std::logic_error("cyclic construction recursion at " + key_str(q, v, d, k));

  CEntry ce;
  const int h = d / 2;
  const int kk = std::min(k, v - k);

  if (kk == 0 || d > 2 * kk) {
    ce.size = 1;
    ce.plan = make_leaf(PlanNode::Kind::trivial, q, v, k, d, 1);
  } else if (k > v - k) {
    // Build the complementary-dimension code and flip every word.
    const CEntry& child = compute_constructible(q, v, d, v - k);
    ce.size = child.size;
    ce.plan = make_leaf(PlanNode::Kind::complement, q, v, k, d, child.size);
    ce.plan->children.push_back(clone_plan(*child.plan));
  } else {
    // Candidates in preference order; later ones must win strictly.
    ce.size = 1;
    ce.plan = make_leaf(PlanNode::Kind::trivial, q, v, k, d, 1);

    if (v % k == 0) {
      BigCount sz = spread_size(q, v, k);
      if (sz > ce.size) {
        ce.size = sz;
        ce.plan = make_leaf(PlanNode::Kind::spread, q, v, k, d, std::move(sz));
      }
    }

    {
      BigCount sz = mrd_size(q, k, v - k, h);
      if (sz > ce.size) {
        ce.size = sz;
        ce.plan = make_leaf(PlanNode::Kind::lifted_mrd, q, v, k, d, sz);
        ce.plan->rmcs.push_back(
            RmcSpec{RmcSpec::Kind::mrd, q, k, v - k, h, std::min(k, v - k)});
      }
    }

    for (int r = k; r <= v - 1; ++r) {
      const int s = v - r;
      const CEntry& a_part = compute_constructible(q, r, d, k);
      const BigCount m_val = mrd_size(q, k, s, h);
      for (int t = 0; t <= k - h; ++t) {
        if (k > s + t) continue;
        const int u_r = k - h - t;
        const int b_r = r - t;

        RmcSpec r_spec{RmcSpec::Kind::zero, q, k, b_r, h, u_r};
        BigCount r_count = 1;
        if (u_r > 0) {
          const BigCount delta = delta_bound(q, k, b_r, h, u_r);
          BigCount prod = 0;
          if (k % u_r == 0 && b_r % u_r == 0 && h <= 2 * u_r)
            prod = (big_pow(q, std::min(k, b_r)) - 1) / (big_pow(q, u_r) - 1);
          if (prod > delta) {
            r_spec.kind = RmcSpec::Kind::product;
            r_count = prod;
          } else {
            r_spec.kind = RmcSpec::Kind::delta_subset;
            r_count = delta;
          }
        }

        const CEntry& b_part = compute_constructible(q, s + t, d, k);
        BigCount total = a_part.size * m_val + r_count * b_part.size;
        if (total > ce.size) {
          ce.size = total;
          ce.plan = make_leaf(PlanNode::Kind::linkage_generalized, q, v, k, d, std::move(total));
          ce.plan->r = r;
          ce.plan->s = s;
          ce.plan->t = t;
          ce.plan->children.push_back(clone_plan(*a_part.plan));
          ce.plan->children.push_back(clone_plan(*b_part.plan));
          ce.plan->rmcs.push_back(RmcSpec{RmcSpec::Kind::mrd, q, k, s, h, std::min(k, s)});
          ce.plan->rmcs.push_back(r_spec);
        }
      }
    }
  }

  c_in_progress_.erase(key);
  return centries_.emplace(key, std::move(ce)).first->second;
}

// ---------------------------------------------------------------------------
// Tables and comparisons

std::vector<const BoundEntry*> BoundsEngine::compute_table(int q, int d, int k, int v_max) {
  if (v_max < k) throw std::invalid_argument("table requires v_max >= k");
  std::vector<const BoundEntry*> rows;
  rows.reserve(static_cast<size_t>(v_max - k + 1));
  for (int v = k; v <= v_max; ++v) rows.push_back(&entry(q, v, d, k));
  return rows;
}

const CompareRow* CompareReport::best(const std::string& construction) const {
  const CompareRow* found = nullptr;
  for (const CompareRow& row : rows)
    if (row.construction == construction && (!found || row.value > found->value)) found = &row;
  return found;
}

std::string CompareReport::to_json() const {
  nlohmann::json doc;
  doc["format_version"] = 1;
  doc["q"] = q;
  doc["v"] = v;
  doc["d"] = d;
  doc["k"] = k;
  doc["rows"] = nlohmann::json::array();
  for (const CompareRow& row : rows) {
    nlohmann::json r;
    r["construction"] = row.construction;
    if (!row.blocks.empty()) {
      r["blocks"] = row.blocks;
      r["hang"] = row.hang;
    } else if (row.r != 0 || row.s != 0 || row.t != 0) {
      r["r"] = row.r;
      r["s"] = row.s;
      r["t"] = row.t;
    }
    r["value"] = big_str(row.value);
    r["formula"] = row.formula;
    doc["rows"].push_back(std::move(r));
  }
  return doc.dump(2) + "\n";
}

CompareReport BoundsEngine::compare_constructions(int q, int v, int d, int k) {
  check_key_domain(q, v, d, k);
  const int kk = std::min(k, v - k);
  CompareReport rep;
  rep.q = q;
  rep.v = v;
  rep.d = d;
  rep.k = kk;
  if (kk == 0 || d > 2 * kk || d <= 2) {
    const BoundEntry& e = entry(q, v, d, k);
    rep.rows.push_back(CompareRow{e.lower_provenance, 0, 0, 0, {}, {}, e.lower, "forced value"});
    return rep;
  }
  const int h = d / 2;

  rep.rows.push_back(CompareRow{"trivial", 0, 0, 0, {}, {}, 1, "single word"});
  if (v % kk == 0) {
    rep.rows.push_back(CompareRow{"spread", 0, 0, 0, {}, {}, spread_size(q, v, kk),
                                  "(" + std::to_string(q) + "^" + std::to_string(v) + "-1)/(" +
                                      std::to_string(q) + "^" + std::to_string(kk) + "-1)"});
  }
  rep.rows.push_back(CompareRow{"lifted-mrd", 0, 0, 0, {}, {}, mrd_size(q, kk, v - kk, h),
                                "maximum rank-distance size on " + std::to_string(kk) + "x" +
                                    std::to_string(v - kk)});

  for (int r = kk; r <= v - 1; ++r) {
    const int s = v - r;
    const BigCount a_val = aq_lower(q, r, d, kk);
    const BigCount m_val = mrd_size(q, kk, s, h);
    for (int t = 0; t <= kk - h; ++t) {
      if (kk > s + t) continue;
      const BigCount lam = lambda(q, kk, r - t, h, kk - h - t).lower;
      const BigCount b_val = aq_lower(q, s + t, d, kk);
      rep.rows.push_back(CompareRow{"generalized-linkage", r, s, t, {}, {},
                                    a_val * m_val + lam * b_val,
                                    big_str(a_val) + "*" + big_str(m_val) + " + " + big_str(lam) +
                                        "*" + big_str(b_val)});
    }
  }

  for (int r = kk; r <= v - h; ++r) {
    const int s = v - r;
    const BigCount a_val = aq_lower(q, r, d, kk);
    const BigCount m_val = mrd_size(q, kk, s, h);
    const BigCount b_val = aq_lower(q, s + kk - h, d, kk);
    rep.rows.push_back(CompareRow{"improved-linkage", r, s, kk - h, {}, {}, a_val * m_val + b_val,
                                  big_str(a_val) + "*" + big_str(m_val) + " + " +
                                      big_str(b_val)});
  }

  for (int r = kk; r <= v - kk; ++r) {
    const int s = v - r;
    const BigCount a_val = aq_lower(q, r, d, kk);
    const BigCount m_val = mrd_size(q, kk, s, h);
    const BigCount b_val = aq_lower(q, s, d, kk);
    rep.rows.push_back(CompareRow{"original-linkage", r, s, 0, {}, {}, a_val * m_val + b_val,
                                  big_str(a_val) + "*" + big_str(m_val) + " + " +
                                      big_str(b_val)});
  }

  if (d == 2 * kk - 2 && kk >= 3) {
    for (int r = kk; r <= v - kk + 1; ++r) {
      const int s = v - r;
      const BigCount a_val = aq_lower(q, r, d, kk);
      const BigCount m_val = mrd_size(q, kk, s, kk - 1);
      const BigCount b_val = aq_lower(q, s, d - 2, kk - 1);
      rep.rows.push_back(CompareRow{"kurz-linkage", r, s, 0, {}, {}, a_val * m_val + b_val,
                                    big_str(a_val) + "*" + big_str(m_val) + " + " +
                                        big_str(b_val)});
    }
  }

  {
    const BigCount lam = lambda_star_conservative(q, kk, kk, h, kk - h);
    const int s = v - kk;
    const BigCount b46 = aq_lower(q, s, d, kk);
    rep.rows.push_back(CompareRow{"parallel-improved", kk, s, 0, {}, {},
                                  mrd_size(q, kk, s, h) + b46 * lam,
                                  big_str(mrd_size(q, kk, s, h)) + " + " + big_str(b46) + "*" +
                                      big_str(lam)});
    const int n = v - 2 * kk;
    const BigCount m1 = mrd_size(q, kk, n, h);
    const BigCount m2 = mrd_size(q, kk, kk, h);
    const BigCount a45 = aq_lower(q, n + kk, d, kk);
    rep.rows.push_back(CompareRow{"parallel-linkage", 0, 0, 0, {}, {}, m1 * m2 + a45 * lam,
                                  big_str(m1) + "*" + big_str(m2) + " + " + big_str(a45) + "*" +
                                      big_str(lam)});
    const BigCount delta = delta_bound(q, kk, kk, h, kk - h);
    rep.rows.push_back(CompareRow{"parallel-improved-delta", kk, s, 0, {}, {},
                                  mrd_size(q, kk, s, h) + b46 * delta,
                                  big_str(mrd_size(q, kk, s, h)) + " + " + big_str(b46) + "*" +
                                      big_str(delta)});
  }

  for (int n0 = 1; n0 <= v - 2; ++n0) {
    for (int n1 = 1; n1 <= v - n0 - 1; ++n1) {
      const int n2 = v - n0 - n1;
      if (kk > n0) continue;
      for (int t1 = 0; t1 <= std::min(kk - h, n0); ++t1) {
        if (kk > n1 + t1) continue;
        for (int t2 = 0; t2 <= std::min(kk - h, n1); ++t2) {
          if (kk > n2 + t2) continue;
          auto lam_lower = [&](int b, int u) -> BigCount {
            return b == 0 ? BigCount(1) : lambda(q, kk, b, h, u).lower;
          };
          const BigCount n_0 =
              aq_lower(q, n0, d, kk) * mrd_size(q, kk, n1, h) * mrd_size(q, kk, n2, h);
          const BigCount n_1 = aq_lower(q, n1 + t1, d, kk) * lam_lower(n0 - t1, kk - h - t1) *
                               mrd_size(q, kk, n2, h);
          const BigCount n_2 = aq_lower(q, n2 + t2, d, kk) * lam_lower(n0, kk - h) *
                               lam_lower(n1 - t2, kk - h - t2);
          rep.rows.push_back(CompareRow{"multiblock", 0, 0, 0,
                                        std::vector<int>{n0, n1, n2},
                                        std::vector<int>{0, t1, t2}, n_0 + n_1 + n_2,
                                        big_str(n_0) + " + " + big_str(n_1) + " + " +
                                            big_str(n_2)});
        }
      }
    }
  }

  if (std::optional<SeedSet::Seed> seed = seeds_.find(q, v, d, kk))
    rep.rows.push_back(
        CompareRow{"seed", 0, 0, 0, {}, {}, seed->lower, "source: " + seed->source});

  return rep;
}

std::pair<BigCount, BigCount> BoundsEngine::parallel_pair(int q, int k, int d, int n) {
  if (d % 2 != 0 || d / 2 < 2 || d / 2 > k || n < 0)
    throw std::invalid_argument("parallel comparison requires even d, 2 <= d/2 <= k, n >= 0");
  const int h = d / 2;
  const BigCount lam = lambda(q, k, k, h, k - h).lower;
  const BigCount a_val = aq_lower(q, n + k, d, k);
  const BigCount improved = mrd_size(q, k, n + k, h) + a_val * lam;
  const BigCount parallel = mrd_size(q, k, n, h) * mrd_size(q, k, k, h) + a_val * lam;
  return {improved, parallel};
}

// ---------------------------------------------------------------------------
// Export

std::string table_to_csv(const std::vector<const BoundEntry*>& rows) {
  const auto quoted = [](const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
      if (c == '"') out += '"';
      out += c;
    }
    return out + "\"";
  };
  std::string out = "q,v,d,k,lower,upper,exact,provenance\n";
  for (const BoundEntry* e : rows) {
    out += std::to_string(e->q) + "," + std::to_string(e->v) + "," + std::to_string(e->d) + "," +
           std::to_string(e->k) + "," + big_str(e->lower) + "," + big_str(e->upper) + "," +
           (e->exact ? "true" : "false") + "," + quoted(e->lower_provenance) + "\n";
  }
  return out;
}

std::string table_to_json(const std::vector<const BoundEntry*>& rows) {
  nlohmann::json doc;
  doc["format_version"] = 1;
  doc["rows"] = nlohmann::json::array();
  for (const BoundEntry* e : rows) {
    nlohmann::json r;
    r["q"] = e->q;
    r["v"] = e->v;
    r["d"] = e->d;
    r["k"] = e->k;
    r["lower"] = big_str(e->lower);
    r["upper"] = big_str(e->upper);
    r["exact"] = e->exact;
    r["lower_provenance"] = e->lower_provenance;
    r["upper_provenance"] = e->upper_provenance;
    r["constructible"] = e->lower_plan != nullptr;
    doc["rows"].push_back(std::move(r));
  }
  return doc.dump(2) + "\n";
}

}  // namespace cdc
