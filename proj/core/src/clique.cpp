#include "cdc/clique.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <numeric>
#include <stdexcept>
#include <string>

#include "cdc/errors.hpp"
#include "cdc/field.hpp"
#include "cdc/mrd.hpp"
#include "cdc/qcount.hpp"

#include "json.hpp"

namespace cdc {

namespace {

// All full-rank matrices in reduced row-echelon form with r rows and b
// columns: choose the pivot columns, then run an odometer over the free
// entries (right of the own pivot, outside other pivot columns).
void enumerate_rref(const FieldContext& F, int r, int b, std::vector<Mat>& out) {
  std::vector<int> piv(r);
  std::iota(piv.begin(), piv.end(), 0);
  const int q = F.q();
  while (true) {
    std::vector<bool> is_piv(b, false);
    for (int c : piv) is_piv[c] = true;
    std::vector<std::pair<int, int>> free_pos;
    for (int i = 0; i < r; ++i) {
      for (int c = piv[i] + 1; c < b; ++c) {
        if (!is_piv[c]) free_pos.emplace_back(i, c);
      }
    }
    Mat base(F, r, b);
    for (int i = 0; i < r; ++i) base.set(i, piv[i], 1);

    std::vector<uint8_t> digit(free_pos.size(), 0);
    while (true) {
      Mat m = base;
      for (size_t t = 0; t < free_pos.size(); ++t) {
        m.set(free_pos[t].first, free_pos[t].second, digit[t]);
      }
      out.push_back(std::move(m));
      size_t p = 0;
      while (p < digit.size() && digit[p] == q - 1) digit[p++] = 0;
      if (p == digit.size()) break;
      ++digit[p];
    }

    // next pivot-column combination in lexicographic order
    int i = r - 1;
    while (i >= 0 && piv[i] == b - r + i) --i;
    if (i < 0) break;
    ++piv[i];
    for (int j = i + 1; j < r; ++j) piv[j] = piv[j - 1] + 1;
  }
}

// All a-by-r matrices of full column rank r, by filtering the complete
// census. The census is at most a small constant factor larger than the
// survivor count, so this stays proportional to the output size.
void enumerate_full_column_rank(const FieldContext& F, int a, int r, std::vector<Mat>& out) {
  const int q = F.q();
  std::vector<uint8_t> digit(static_cast<size_t>(a) * r, 0);
  while (true) {
    Mat m(F, a, r);
    for (int i = 0; i < a; ++i) {
      for (int j = 0; j < r; ++j) m.set(i, j, digit[static_cast<size_t>(i) * r + j]);
    }
    if (rank(m) == r) out.push_back(std::move(m));
    size_t p = 0;
    while (p < digit.size() && digit[p] == q - 1) digit[p++] = 0;
    if (p == digit.size()) break;
    ++digit[p];
  }
}

}  // namespace

RankGraph build_rank_graph(int q, int a, int b, int d, int u, uint64_t max_vertices) {
  if (a < 1 || b < 1 || d < 1 || u < 0) {
    throw std::invalid_argument("rank graph requires a, b, d >= 1 and u >= 0");
  }
  const int u_eff = std::min({u, a, b});
  BigCount expected = 1;  // the zero matrix
  for (int r = 1; r <= u_eff; ++r) expected += count_matrices_of_rank(q, a, b, r);
  if (expected > BigCount(max_vertices)) {
    throw BudgetError("rank graph would have " + expected.str() + " vertices, above the cap of " +
                      std::to_string(max_vertices));
  }

  const FieldContext& F = FieldContext::get(q);
  RankGraph g;
  g.q = q;
  g.a = a;
  g.b = b;
  g.d = d;
  g.u = u_eff;
  g.vertices.emplace_back(F, a, b);
  for (int r = 1; r <= u_eff; ++r) {
    std::vector<Mat> rrefs, lefts;
    enumerate_rref(F, r, b, rrefs);
    enumerate_full_column_rank(F, a, r, lefts);
    for (const Mat& c : lefts) {
      for (const Mat& rr : rrefs) g.vertices.push_back(mul(c, rr));
    }
  }
  std::sort(g.vertices.begin(), g.vertices.end());
  if (BigCount(g.vertices.size()) != expected) {
    throw std::logic_error("rank factorization enumeration does not match the matrix census");
  }

  const size_t n = g.vertices.size();
  const size_t words = (n + 63) / 64;
  g.adj.assign(n, std::vector<uint64_t>(words, 0));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      if (rank(sub(g.vertices[i], g.vertices[j])) >= d) {
        g.adj[i][j >> 6] |= uint64_t{1} << (j & 63);
        g.adj[j][i >> 6] |= uint64_t{1} << (i & 63);
      }
    }
  }
  return g;
}

namespace {

// Suffix-incremental branch and bound: vertices are renumbered once, then
// processed from the last index backwards. After handling index i, c_[i]
// holds the exact clique number of the subgraph induced on {i, ..., n-1};
// during the search for index i-1 every candidate set U is pruned by both
// its population count and c_[min U], and the search unwinds as soon as the
// suffix clique number is seen to grow (it grows by at most one per step).
// Vertices and cliques are handled as renumbered ids.
class CliqueSolver {
 public:
  using Bits = std::vector<uint64_t>;

  CliqueSolver(const RankGraph& g, const std::vector<int>& order, uint64_t max_nodes, bool trace)
      : max_nodes_(max_nodes), trace_(trace), old_of_new_(order) {
    n_ = static_cast<int>(g.vertices.size());
    words_ = (static_cast<size_t>(n_) + 63) / 64;
    new_of_old_.resize(n_);
    for (int i = 0; i < n_; ++i) new_of_old_[old_of_new_[i]] = i;

    adj_.assign(n_, Bits(words_, 0));
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < n_; ++j) {
        if (g.edge(old_of_new_[i], old_of_new_[j])) {
          adj_[i][static_cast<size_t>(j) >> 6] |= uint64_t{1} << (j & 63);
        }
      }
    }
  }

  void solve() {
    c_.assign(n_, 0);
    best_.clear();
    cur_.clear();
    buf_.assign(static_cast<size_t>(n_) + 2, Bits(words_, 0));
    for (int i = n_ - 1; i >= 0; --i) {
      found_ = false;
      Bits& U = buf_[0];
      std::fill(U.begin(), U.end(), 0);
      int ucount = 0;
      for (int j = i + 1; j < n_; ++j) {
        if (test(adj_[i], j)) {
          set(U, j);
          ++ucount;
        }
      }
      // Enable the per-node colouring bound only when the root colouring
      // comes close to the incumbent: on such steps it prunes everywhere
      // (the classes mirror a structural bottleneck of the graph), while
      // on the others it would be pure overhead.
      const int slack_limit = static_cast<int>(best_.size()) - 1 + kColorSlack;
      step_coloring_ = color_bound(U, slack_limit) <= slack_limit;
      cur_.push_back(i);
      search(0, 1, ucount);
      cur_.pop_back();
      c_[i] = static_cast<int>(best_.size());
      if (trace_ && (i % 16 == 0 || found_)) {
        std::fprintf(stderr, "[clique] i=%d/%d c=%d nodes=%llu color=%d\n", i, n_, c_[i],
                     static_cast<unsigned long long>(nodes_), step_coloring_ ? 1 : 0);
      }
    }
  }

  std::vector<int> best_in_old_ids() const {
    std::vector<int> out;
    out.reserve(best_.size());
    for (int v : best_) out.push_back(old_of_new_[v]);
    return out;
  }

  uint64_t nodes() const { return nodes_; }

 private:
  static bool test(const Bits& b, int v) {
    return (b[static_cast<size_t>(v) >> 6] >> (v & 63)) & 1;
  }
  static void set(Bits& b, int v) { b[static_cast<size_t>(v) >> 6] |= uint64_t{1} << (v & 63); }
  static void clear(Bits& b, int v) {
    b[static_cast<size_t>(v) >> 6] &= ~(uint64_t{1} << (v & 63));
  }

  // Greedy colouring of U; aborts once more than `limit` classes are in
  // use (the caller can no longer prune) and reports limit + 1. Classes
  // live in shared scratch, valid only until the next call.
  int color_bound(const Bits& U, int limit) {
    int n_classes = 0;
    for (size_t i = 0; i < words_; ++i) {
      uint64_t x = U[i];
      while (x != 0) {
        const int v = static_cast<int>(i) * 64 + std::countr_zero(x);
        x &= x - 1;
        const Bits& nv = adj_[v];
        int c = 0;
        for (; c < n_classes; ++c) {
          bool conflict = false;
          const Bits& cls = classes_[c];
          for (size_t w = 0; w < words_; ++w) {
            if ((cls[w] & nv[w]) != 0) {
              conflict = true;
              break;
            }
          }
          if (!conflict) break;
        }
        if (c == n_classes) {
          if (n_classes + 1 > limit) return limit + 1;
          if (static_cast<int>(classes_.size()) <= n_classes) classes_.emplace_back(words_, 0);
          std::fill(classes_[n_classes].begin(), classes_[n_classes].end(), 0);
          ++n_classes;
        }
        set(classes_[c], v);
      }
    }
    return n_classes;
  }

  // The candidate set for this depth lives in buf_[depth]; ucount is its
  // population count (maintained by the caller to avoid a rescan).
  void search(int depth, int size, int ucount) {
    if (++nodes_ > max_nodes_) {
      throw BudgetError("clique search exceeded the node budget of " + std::to_string(max_nodes_));
    }
    if (ucount == 0) {
      if (size > static_cast<int>(best_.size())) {
        best_ = cur_;
        found_ = true;
      }
      return;
    }
    Bits& U = buf_[depth];
    if (step_coloring_) {
      const int limit = static_cast<int>(best_.size()) - size;
      if (color_bound(U, limit) <= limit) return;
    }
    Bits& next = buf_[depth + 1];
    while (ucount > 0) {
      if (size + ucount <= static_cast<int>(best_.size())) return;
      int v = -1;
      for (size_t w = 0; w < words_; ++w) {
        if (U[w] != 0) {
          v = static_cast<int>(w) * 64 + std::countr_zero(U[w]);
          break;
        }
      }
      if (size + c_[v] <= static_cast<int>(best_.size())) return;
      clear(U, v);
      --ucount;
      const Bits& nv = adj_[v];
      int ncount = 0;
      for (size_t w = 0; w < words_; ++w) {
        next[w] = U[w] & nv[w];
        ncount += std::popcount(next[w]);
      }
      cur_.push_back(v);
      search(depth + 1, size + 1, ncount);
      cur_.pop_back();
      if (found_) return;
    }
  }

  static constexpr int kColorSlack = 3;

  int n_ = 0;
  size_t words_ = 0;
  uint64_t nodes_ = 0;
  uint64_t max_nodes_;
  bool trace_ = false;
  bool found_ = false;
  bool step_coloring_ = false;
  std::vector<int> old_of_new_;
  std::vector<int> new_of_old_;
  std::vector<Bits> adj_;
  std::vector<Bits> buf_;    // candidate sets indexed by recursion depth
  std::vector<Bits> classes_;  // colouring scratch
  std::vector<int> best_;
  std::vector<int> cur_;
  std::vector<int> c_;
};

// Deterministic greedy clique heuristic: from a bounded set of start
// vertices, repeatedly add the candidate with the most neighbours among the
// remaining candidates. Returns the best clique found, as vertex ids.
std::vector<int> greedy_clique(const RankGraph& g) {
  const int n = static_cast<int>(g.vertices.size());
  if (n == 0) return {};
  const size_t words = g.adj[0].size();
  const int stride = std::max(1, n / 200);
  std::vector<int> best;
  std::vector<uint64_t> P(words);
  for (int s = 0; s < n; s += stride) {
    std::vector<int> C{s};
    P = g.adj[s];
    while (true) {
      int best_v = -1;
      int best_deg = -1;
      for (size_t w = 0; w < words; ++w) {
        uint64_t x = P[w];
        while (x != 0) {
          const int v = static_cast<int>(w) * 64 + std::countr_zero(x);
          x &= x - 1;
          int deg = 0;
          for (size_t t = 0; t < words; ++t) deg += std::popcount(P[t] & g.adj[v][t]);
          if (deg > best_deg) {
            best_deg = deg;
            best_v = v;
          }
        }
      }
      if (best_v < 0) break;
      C.push_back(best_v);
      for (size_t t = 0; t < words; ++t) P[t] &= g.adj[best_v][t];
    }
    if (C.size() > best.size()) best = C;
  }
  return best;
}

// Greedy colouring of the whole graph, aborting with limit + 1 once more
// than `limit` classes are needed.
int greedy_color_count(const RankGraph& g, int limit) {
  const int n = static_cast<int>(g.vertices.size());
  if (n == 0) return 0;
  const size_t words = g.adj[0].size();
  std::vector<std::vector<uint64_t>> classes;
  for (int v = 0; v < n; ++v) {
    size_t c = 0;
    for (; c < classes.size(); ++c) {
      bool conflict = false;
      for (size_t w = 0; w < words; ++w) {
        if ((classes[c][w] & g.adj[v][w]) != 0) {
          conflict = true;
          break;
        }
      }
      if (!conflict) break;
    }
    if (c == classes.size()) {
      if (static_cast<int>(classes.size()) + 1 > limit) return limit + 1;
      classes.emplace_back(words, 0);
    }
    classes[c][static_cast<size_t>(v) >> 6] |= uint64_t{1} << (v & 63);
  }
  return static_cast<int>(classes.size());
}

// Builds the vertex processing order for the solver (new index -> old id).
// `witness` vertices (a known clique) are promoted above everything else so
// the search reaches their size within its first steps and every later
// stage prunes against that incumbent.
std::vector<int> make_order(const RankGraph& g, CliqueOrder order, const std::vector<int>& witness) {
  const int n = static_cast<int>(g.vertices.size());
  std::vector<int> ids(n);
  std::iota(ids.begin(), ids.end(), 0);
  switch (order) {
    case CliqueOrder::input:
      break;
    case CliqueOrder::structured: {
      // Sort key: ranks 1..d-1 ascending first, then rank 0, then ranks
      // d..u ascending, then the witness clique on top. Stable, so ties
      // keep the canonical matrix order within each rank class.
      std::vector<int> key(n);
      for (int i = 0; i < n; ++i) {
        const int r = rank(g.vertices[i]);
        key[i] = r == 0 ? g.d : (r < g.d ? r : g.d + r);
      }
      for (const int v : witness) key[v] = 2 * g.d + g.u + 1;
      std::stable_sort(ids.begin(), ids.end(), [&](int x, int y) { return key[x] < key[y]; });
      break;
    }
    case CliqueOrder::rank_lex:
    case CliqueOrder::rank_desc: {
      std::vector<int> rk(n);
      for (int i = 0; i < n; ++i) rk[i] = rank(g.vertices[i]);
      if (order == CliqueOrder::rank_lex) {
        std::stable_sort(ids.begin(), ids.end(), [&](int x, int y) { return rk[x] < rk[y]; });
      } else {
        std::stable_sort(ids.begin(), ids.end(), [&](int x, int y) { return rk[x] > rk[y]; });
      }
      break;
    }
    case CliqueOrder::degree_desc:
    case CliqueOrder::degree_asc: {
      std::vector<int> degree(n, 0);
      for (int i = 0; i < n; ++i) {
        for (const uint64_t w : g.adj[i]) degree[i] += std::popcount(w);
      }
      if (order == CliqueOrder::degree_desc) {
        std::stable_sort(ids.begin(), ids.end(),
                         [&](int x, int y) { return degree[x] > degree[y]; });
      } else {
        std::stable_sort(ids.begin(), ids.end(),
                         [&](int x, int y) { return degree[x] < degree[y]; });
      }
      break;
    }
  }
  return ids;
}

}  // namespace

CliqueResult max_clique(const RankGraph& g, const std::vector<Mat>& incumbent,
                        const CliqueOptions& opt) {
  CliqueResult res;
  res.n_vertices = g.vertices.size();
  for (const auto& row : g.adj) {
    for (const uint64_t w : row) res.n_edges += std::popcount(w);
  }
  res.n_edges /= 2;
  if (g.vertices.empty()) return res;

  std::vector<int> seed_old;
  if (!incumbent.empty()) {
    seed_old.reserve(incumbent.size());
    for (const Mat& m : incumbent) {
      const auto it = std::lower_bound(g.vertices.begin(), g.vertices.end(), m);
      if (it == g.vertices.end() || !(*it == m)) {
        throw std::logic_error("incumbent clique contains a matrix outside the vertex set");
      }
      seed_old.push_back(static_cast<int>(it - g.vertices.begin()));
    }
    for (size_t i = 0; i < seed_old.size(); ++i) {
      for (size_t j = i + 1; j < seed_old.size(); ++j) {
        if (!g.edge(seed_old[i], seed_old[j])) {
          throw std::logic_error("incumbent is not a clique of the rank graph");
        }
      }
    }
  }

  // Promote a heuristic clique to the top of the order only when the
  // colouring number of the whole graph comes close to it: in that regime
  // the colouring bound prunes every stage once the incumbent is tight.
  // When the colouring number is far above the clique number, the search
  // instead relies on the suffix bounds, and a promoted clique would sit
  // inside every suffix and flatten those bounds into uselessness.
  std::vector<int> witness;
  if (opt.order == CliqueOrder::structured) {
    witness = greedy_clique(g);
    if (seed_old.size() > witness.size()) witness = seed_old;
    const int limit = static_cast<int>(witness.size()) + 3;
    if (greedy_color_count(g, limit) > limit) witness.clear();
  }
  CliqueSolver solver(g, make_order(g, opt.order, witness), opt.max_nodes, opt.trace);
  solver.solve();
  res.nodes_explored = solver.nodes();
  for (const int v : solver.best_in_old_ids()) res.witness.push_back(g.vertices[v]);
  std::sort(res.witness.begin(), res.witness.end());
  res.size = static_cast<int>(res.witness.size());
  if (res.size < static_cast<int>(incumbent.size())) {
    throw std::logic_error("clique search returned less than the validated incumbent");
  }
  return res;
}

CliqueResult lambda_exact_clique(int q, int a, int b, int d, int u, const CliqueOptions& opt) {
  const RankGraph g = build_rank_graph(q, a, b, d, u, opt.max_vertices);
  const std::vector<Mat> incumbent = delta_subset_words(q, a, b, d, std::min({u, a, b}));
  return max_clique(g, incumbent, opt);
}

std::string clique_certificate_json(const CliqueResult& res, int q, int a, int b, int d, int u) {
  nlohmann::json j;
  j["format_version"] = 1;
  j["q"] = q;
  j["a"] = a;
  j["b"] = b;
  j["d"] = d;
  j["u"] = u;
  j["clique_size"] = res.size;
  j["n_vertices"] = res.n_vertices;
  j["n_edges"] = res.n_edges;
  j["nodes_explored"] = res.nodes_explored;
  nlohmann::json verts = nlohmann::json::array();
  for (const Mat& m : res.witness) {
    nlohmann::json rows = nlohmann::json::array();
    for (int r = 0; r < m.rows(); ++r) {
      std::string row;
      for (int c = 0; c < m.cols(); ++c) row.push_back(static_cast<char>('0' + m.at(r, c)));
      rows.push_back(row);
    }
    verts.push_back(rows);
  }
  j["vertices"] = verts;
  return j.dump(2);
}

RankCode clique_certificate_to_rank_code(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid clique certificate: ") + e.what());
  }
  const int q = j.at("q").get<int>();
  const int a = j.at("a").get<int>();
  const int b = j.at("b").get<int>();
  const int d = j.at("d").get<int>();
  const int u = j.at("u").get<int>();
  const FieldContext& F = FieldContext::get(q);
  std::vector<Mat> words;
  for (const auto& rows : j.at("vertices")) {
    Mat m(F, a, b);
    int r = 0;
    for (const auto& row : rows) {
      const std::string s = row.get<std::string>();
      for (int c = 0; c < b; ++c) m.set(r, c, static_cast<uint8_t>(s.at(c) - '0'));
      ++r;
    }
    words.push_back(std::move(m));
  }
  return RankCode(q, a, b, d, u, std::move(words));
}

}  // namespace cdc
