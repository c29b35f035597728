#include "cdc/construct.hpp"

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "cdc/errors.hpp"
#include "cdc/extfield.hpp"
#include "cdc/mrd.hpp"
#include "cdc/qcount.hpp"

namespace cdc {

namespace {

void require(bool ok, const std::string& constraint, const std::string& detail = "") {
  if (!ok) throw ConstraintError(constraint, detail);
}

std::string shape_str(int rows, int cols) {
  return std::to_string(rows) + "x" + std::to_string(cols);
}

}  // namespace

Subspace trivial_subspace(int q, int v, int k) {
  if (k < 0 || k > v) throw std::invalid_argument("trivial_subspace: need 0 <= k <= v");
  const FieldContext& f = FieldContext::get(q);
  Mat m(f, k, v);
  for (int i = 0; i < k; ++i) m.set(i, i, 1);
  return Subspace::from_rref_unchecked(std::move(m));
}

CDCCode build_trivial(int q, int v, int k, int d) {
  return CDCCode(q, v, k, d, {trivial_subspace(q, v, k)});
}

CDCCode build_spread(int q, int v, int k) {
  require(k >= 1, "1 <= k");
  require(v >= k && v % k == 0, "k divides v", shape_str(k, v));
  const FieldContext& f = FieldContext::get(q);
  const int m = v / k;  // coordinates over the extension field

  BigCount expected = (big_pow(q, v) - 1) / (big_pow(q, k) - 1);
  constexpr uint64_t kMaxSpread = uint64_t{1} << 26;
  if (expected > kMaxSpread) throw BudgetError("spread enumeration", kMaxSpread);

  ExtField ext(f, k);
  const uint64_t order = ext.order();  // q^k

  std::vector<Subspace> words;
  words.reserve(static_cast<size_t>(expected));

  // Projective points of GF(q^k)^m: leading coordinate 1 at position `lead`,
  // zeros before it, arbitrary field elements after it.
  std::vector<uint64_t> point(m, 0);
  for (int lead = 0; lead < m; ++lead) {
    const int free = m - 1 - lead;
    uint64_t combos = 1;
    for (int i = 0; i < free; ++i) combos *= order;
    for (uint64_t idx = 0; idx < combos; ++idx) {
      std::fill(point.begin(), point.end(), uint64_t{0});
      point[lead] = 1;
      uint64_t rest = idx;
      for (int c = lead + 1; c < m; ++c) {
        point[c] = rest % order;
        rest /= order;
      }
      // Rows span the GF(q)-expansion of {point, alpha * point, ...,
      // alpha^{k-1} * point}; they are independent because the point is
      // nonzero and 1, alpha, ..., alpha^{k-1} form a basis.
      Mat basis(f, k, v);
      uint64_t scale = 1;
      for (int i = 0; i < k; ++i) {
        for (int c = 0; c < m; ++c) {
          std::vector<uint8_t> digits = ext.expand(ext.mul(scale, point[c]));
          for (int j = 0; j < k; ++j) basis.set(i, c * k + j, digits[j]);
        }
        if (i + 1 < k) scale = ext.mul(scale, ext.alpha());
      }
      words.push_back(Subspace::from_full_rank(basis));
    }
  }
  CDCCode code(q, v, k, 2 * k, std::move(words));
  if (BigCount(code.words().size()) != expected)
    throw std::logic_error("spread enumeration produced a wrong point count");
  return code;
}

CDCCode lift_rmc(const RankCode& rmc) {
  const FieldContext& f = FieldContext::get(rmc.q());
  const int k = rmc.a();
  const int v = rmc.a() + rmc.b();
  Mat ident = Mat::identity(f, k);
  std::vector<Subspace> words;
  words.reserve(rmc.words().size());
  for (const Mat& w : rmc.words())
    words.push_back(Subspace::from_rref_unchecked(hconcat(ident, w)));
  CDCCode code(rmc.q(), v, k, 2 * rmc.d_claimed(), std::move(words));
  if (code.words().size() != rmc.words().size())
    throw std::logic_error("lifting collapsed distinct matrices");
  return code;
}

CDCCode complement_code(const CDCCode& code) {
  std::vector<Subspace> words;
  words.reserve(code.words().size());
  for (const Subspace& w : code.words()) words.push_back(complement(w));
  CDCCode out(code.q(), code.v(), code.v() - code.k(), code.d_claimed(), std::move(words));
  if (out.words().size() != code.words().size())
    throw std::logic_error("complement collapsed distinct words");
  return out;
}

MainCase lemma_main_case(const Mat& A, const Mat& B, const Mat& C, const Mat& D, int d) {
  if (A.rows() != B.rows() || C.rows() != D.rows() || A.rows() != C.rows() ||
      A.cols() != C.cols() || B.cols() != D.cols())
    throw std::invalid_argument("lemma_main_case: mismatched block shapes");
  const int k = A.rows();
  if (rank(hconcat(A, B)) != k || rank(hconcat(C, D)) != k)
    throw std::invalid_argument("lemma_main_case: concatenations must have full row rank");

  const int rank_a = rank(A);
  const int rank_c = rank(C);
  if (rank_a == k && rank_c == k &&
      subspace_distance(Subspace::from_full_rank(A), Subspace::from_full_rank(C)) >= d)
    return MainCase::cdc_part;
  if (A == C && rank_a == k && 2 * rank_distance(B, D) >= d) return MainCase::rmc_part;
  if (2 * std::abs(rank_a - rank_c) >= d) return MainCase::rank_gap;
  return MainCase::none;
}

std::vector<Mat> product_rrmc(int q, int a, int b, int d, int u) {
  require(u >= 1, "1 <= u");
  require(a >= u && a % u == 0, "u divides a", shape_str(a, b));
  require(b >= u && b % u == 0, "u divides b", shape_str(a, b));
  require(d <= 2 * u, "d <= 2u", "d " + std::to_string(d) + ", u " + std::to_string(u));

  // Pair the i-th word of a u-subspace spread of GF(q)^a with the i-th word
  // of one of GF(q)^b. Outer products X^T Y have rank exactly u; differences
  // have rank 2u because distinct spread members meet trivially on both
  // sides, so the pairwise rank distance is 2u >= d.
  CDCCode left = build_spread(q, a, u);
  CDCCode right = build_spread(q, b, u);
  const size_t n = std::min(left.words().size(), right.words().size());
  std::vector<Mat> words;
  words.reserve(n);
  for (size_t i = 0; i < n; ++i)
    words.push_back(mul(transpose(left.words()[i].basis()), right.words()[i].basis()));
  std::sort(words.begin(), words.end());
  return words;
}

std::vector<Mat> realize_rmc(const RmcSpec& spec, uint64_t max_enumeration) {
  const FieldContext& f = FieldContext::get(spec.q);
  std::vector<Mat> words;
  switch (spec.kind) {
    case RmcSpec::Kind::zero:
      words.push_back(Mat(f, spec.a, spec.b));
      break;
    case RmcSpec::Kind::empty_cols:
      words.push_back(Mat(f, spec.a, 0));
      break;
    case RmcSpec::Kind::mrd:
      words = enumerate_mrd(build_linear_mrd(spec.q, spec.a, spec.b, spec.d), max_enumeration);
      break;
    case RmcSpec::Kind::delta_subset:
      words = delta_subset_words(spec.q, spec.a, spec.b, spec.d, spec.u, max_enumeration);
      break;
    case RmcSpec::Kind::product:
      words = product_rrmc(spec.q, spec.a, spec.b, spec.d, spec.u);
      break;
  }
  if (BigCount(words.size()) != spec.predicted_size())
    throw std::logic_error("rank-metric ingredient " + spec.kind_name() + " produced " +
                           std::to_string(words.size()) + " words, predicted " +
                           spec.predicted_size().str());
  return words;
}

namespace {

// Shared validation for the two-block linkage assembly, used by both the
// materializing constructor and the lazy word source.
void validate_linkage(int q, int d, int k, int r, int s, int t, const CDCCode& A,
                      const CDCCode& B, const std::vector<Mat>& M, const std::vector<Mat>& R) {
  require(d % 2 == 0 && d / 2 >= 2, "d even and d/2 >= 2", "d " + std::to_string(d));
  require(d / 2 <= k, "d/2 <= k");
  require(2 * k <= r + s, "k <= (r+s)/2");
  require(k <= r, "k <= r");
  require(k <= s + t, "k <= s+t");
  require(0 <= t, "0 <= t");
  require(t <= k - d / 2, "t <= k-d/2", "t " + std::to_string(t));

  auto check_cdc = [&](const CDCCode& c, int dims, const char* which) {
    if (c.q() != q || c.v() != dims || c.k() != k)
      throw std::invalid_argument(std::string("linkage ingredient ") + which + ": expected a (" +
                                  std::to_string(dims) + ", ., .; " + std::to_string(k) +
                                  ") code over GF(" + std::to_string(q) + ")");
    if (c.d_claimed() < d)
      throw std::invalid_argument(std::string("linkage ingredient ") + which +
                                  ": claimed distance below " + std::to_string(d));
  };
  check_cdc(A, r, "A");
  check_cdc(B, s + t, "B");

  for (const Mat& m : M)
    if (m.rows() != k || m.cols() != s || &m.field() != &FieldContext::get(q))
      throw std::invalid_argument("linkage ingredient M: words must be " + shape_str(k, s));
  const int rank_cap = k - d / 2 - t;
  for (const Mat& m : R) {
    if (m.rows() != k || m.cols() != r - t || &m.field() != &FieldContext::get(q))
      throw std::invalid_argument("linkage ingredient R: words must be " + shape_str(k, r - t));
    require(rank(m) <= rank_cap, "rank(R word) <= k - d/2 - t",
            "rank " + std::to_string(rank(m)));
  }
}

Subspace linkage_first_part_word(const Subspace& a, const Mat& m) {
  // Pivots of a's canonical basis stay inside the first block, so appending
  // arbitrary columns keeps the matrix in reduced row echelon form.
  return Subspace::from_rref_unchecked(hconcat(a.basis(), m));
}

Subspace linkage_second_part_word(const Mat& rr, const Subspace& b) {
  return Subspace::from_span(hconcat(rr, b.basis()));
}

}  // namespace

CDCCode construct_generalized_linkage(int q, int d, int k, int r, int s, int t, const CDCCode& A,
                                      const CDCCode& B, const std::vector<Mat>& M,
                                      const std::vector<Mat>& R) {
  validate_linkage(q, d, k, r, s, t, A, B, M, R);

  std::vector<Subspace> words;
  words.reserve(A.words().size() * M.size() + R.size() * B.words().size());
  for (const Subspace& a : A.words())
    for (const Mat& m : M) words.push_back(linkage_first_part_word(a, m));
  for (const Mat& rr : R)
    for (const Subspace& b : B.words()) words.push_back(linkage_second_part_word(rr, b));

  const size_t expected = words.size();
  CDCCode code(q, r + s, k, d, std::move(words));
  if (code.words().size() != expected)
    throw std::logic_error("linkage assembly produced duplicate words");
  return code;
}

CDCCode construct_multiblock(int q, int d, int k, const std::vector<int>& n,
                             const std::vector<int>& t, const std::vector<CDCCode>& A,
                             const std::vector<std::vector<Mat>>& M,
                             const std::vector<std::vector<Mat>>& R,
                             const std::vector<std::vector<Mat>>& S) {
  const int m = static_cast<int>(n.size());
  require(m >= 2, "m >= 2", std::to_string(m) + " blocks");
  if (static_cast<int>(t.size()) != m || static_cast<int>(A.size()) != m ||
      static_cast<int>(M.size()) != m || static_cast<int>(R.size()) != m ||
      static_cast<int>(S.size()) != m)
    throw std::invalid_argument("multiblock: n, t, A, M, R, S must all have one entry per block");

  require(d % 2 == 0 && d / 2 >= 2, "d even and d/2 >= 2", "d " + std::to_string(d));
  require(d / 2 <= k, "d/2 <= k");
  int total = 0;
  for (int ni : n) total += ni;
  require(2 * k <= total, "k <= (sum n_i)/2");
  require(t[0] == 0, "t_0 = 0");
  for (int i = 0; i < m; ++i) {
    const std::string where = "block " + std::to_string(i);
    require(0 <= t[i], "0 <= t_i", where);
    require(t[i] <= k - d / 2, "t_i <= k-d/2", where);
    if (i >= 1) require(t[i] <= n[i - 1], "t_i <= n_{i-1}", where);
    require(k <= n[i] + t[i], "k <= n_i + t_i", where);
  }

  const FieldContext& f = FieldContext::get(q);
  auto check_words = [&](const std::vector<Mat>& list, int cols, int cap, const char* slot,
                         int idx) {
    for (const Mat& w : list) {
      if (w.rows() != k || w.cols() != cols || &w.field() != &f)
        throw std::invalid_argument("multiblock ingredient " + std::string(slot) + "_" +
                                    std::to_string(idx) + ": words must be " +
                                    shape_str(k, cols));
      if (cap >= 0)
        require(rank(w) <= cap,
                std::string("rank(") + slot + " word) <= cap",
                std::string(slot) + "_" + std::to_string(idx) + " cap " + std::to_string(cap));
    }
  };

  // Per-slot checks, used slots only: M_w for w >= 1, R_j for j <= m-3,
  // S_j (right part of block j, width n_j - t_{j+1}) for j <= m-2.
  for (int w = 1; w < m; ++w) check_words(M[w], n[w], -1, "M", w);
  for (int j = 0; j + 2 < m; ++j) check_words(R[j], n[j], k - d / 2, "R", j);
  for (int j = 0; j + 1 < m; ++j)
    check_words(S[j], n[j] - t[j + 1], k - d / 2 - t[j + 1], "S", j);
  for (int i = 0; i < m; ++i) {
    if (A[i].q() != q || A[i].v() != n[i] + t[i] || A[i].k() != k)
      throw std::invalid_argument("multiblock ingredient A_" + std::to_string(i) +
                                  ": expected a (" + std::to_string(n[i] + t[i]) + ", ., .; " +
                                  std::to_string(k) + ") code");
    if (A[i].d_claimed() < d)
      throw std::invalid_argument("multiblock ingredient A_" + std::to_string(i) +
                                  ": claimed distance below " + std::to_string(d));
  }

  std::vector<Subspace> words;
  size_t expected = 0;

  for (int i = 0; i < m; ++i) {
    // Subcode i places tau(A_i) on the last t_i columns of block i-1 plus all
    // of block i, filler picks left of it (R then S) and right of it (M).
    std::vector<const std::vector<Mat>*> slots;
    for (int j = 0; j + 1 < i; ++j) slots.push_back(&R[j]);
    if (i >= 1) slots.push_back(&S[i - 1]);
    for (int w = i + 1; w < m; ++w) slots.push_back(&M[w]);

    size_t combos = A[i].words().size();
    for (const auto* list : slots) combos *= list->size();
    expected += combos;
    if (combos == 0) continue;

    const size_t n_left = slots.size() - static_cast<size_t>(m - 1 - i);
    std::vector<size_t> pick(slots.size(), 0);
    for (const Subspace& a : A[i].words()) {
      for (;;) {
        Mat row(f, k, 0);
        for (size_t p = 0; p < n_left; ++p) row = hconcat(row, (*slots[p])[pick[p]]);
        row = hconcat(row, a.basis());
        for (size_t p = n_left; p < slots.size(); ++p) row = hconcat(row, (*slots[p])[pick[p]]);
        words.push_back(i == 0 ? Subspace::from_rref_unchecked(std::move(row))
                               : Subspace::from_span(row));

        size_t p = 0;
        while (p < pick.size() && ++pick[p] == slots[p]->size()) pick[p++] = 0;
        if (p == pick.size()) break;
      }
    }
  }

  CDCCode code(q, total, k, d, std::move(words));
  if (code.words().size() != expected)
    throw std::logic_error("multiblock assembly produced duplicate words");
  return code;
}

namespace {

void check_plan_header(const PlanNode& plan, const CDCCode& code) {
  if (code.q() != plan.q || code.v() != plan.v || code.k() != plan.k)
    throw std::logic_error("plan execution produced mismatched parameters for " +
                           plan.kind_name());
  if (BigCount(code.words().size()) != plan.size)
    throw std::logic_error("plan node " + plan.kind_name() + " promised " + plan.size.str() +
                           " words, produced " + std::to_string(code.words().size()));
}

// Claimed distance of intermediate codes can be stronger than the node's; the
// node's d is what downstream assembly relies on.
CDCCode with_claimed_distance(CDCCode code, int d) {
  if (code.d_claimed() == d) return code;
  if (code.d_claimed() < d)
    throw std::logic_error("plan node demands a larger distance than its construction yields");
  std::vector<Subspace> words = code.words();
  return CDCCode(code.q(), code.v(), code.k(), d, std::move(words));
}

void expect_children(const PlanNode& plan, size_t n) {
  if (plan.children.size() != n)
    throw std::invalid_argument("plan node " + plan.kind_name() + ": expected " +
                                std::to_string(n) + " child plans, found " +
                                std::to_string(plan.children.size()));
}

void expect_rmcs(const PlanNode& plan, size_t n) {
  if (plan.rmcs.size() != n)
    throw std::invalid_argument("plan node " + plan.kind_name() + ": expected " +
                                std::to_string(n) + " rank-metric ingredients, found " +
                                std::to_string(plan.rmcs.size()));
}

void validate_linkage_shape(const PlanNode& plan) {
  expect_children(plan, 2);
  expect_rmcs(plan, 2);
  if (plan.r + plan.s != plan.v)
    throw std::invalid_argument("plan node " + plan.kind_name() + ": r + s must equal v");
  const RmcSpec& m_spec = plan.rmcs[0];
  const RmcSpec& r_spec = plan.rmcs[1];
  if (m_spec.a != plan.k || m_spec.b != plan.s || m_spec.q != plan.q ||
      (m_spec.predicted_size() > 1 && 2 * m_spec.d < plan.d))
    throw std::invalid_argument("plan node " + plan.kind_name() +
                                ": M ingredient must be k x s with rank distance >= d/2");
  if (r_spec.a != plan.k || r_spec.b != plan.r - plan.t || r_spec.q != plan.q)
    throw std::invalid_argument("plan node " + plan.kind_name() +
                                ": R ingredient must be k x (r-t)");
  switch (plan.kind) {
    case PlanNode::Kind::linkage_original:
      if (plan.t != 0 || r_spec.kind != RmcSpec::Kind::zero)
        throw std::invalid_argument("original linkage requires t = 0 and a zero R ingredient");
      break;
    case PlanNode::Kind::linkage_improved:
      if (plan.t != plan.k - plan.d / 2 || r_spec.kind != RmcSpec::Kind::zero)
        throw std::invalid_argument(
            "improved linkage requires t = k - d/2 and a zero R ingredient");
      break;
    case PlanNode::Kind::linkage_parallel_ti:
      if (plan.r != plan.k || plan.t != 0 ||
          plan.children[0]->kind != PlanNode::Kind::trivial)
        throw std::invalid_argument(
            "parallel linkage requires r = k, t = 0 and a trivial first code");
      break;
    default:
      break;
  }
}

}  // namespace

CDCCode construct_from_plan(const PlanNode& plan, const ConstructOptions& opt) {
  if (plan.size > BigCount(opt.max_words))
    throw BudgetError("materializing " + plan.size.str() + " words", opt.max_words);

  switch (plan.kind) {
    case PlanNode::Kind::trivial: {
      expect_children(plan, 0);
      CDCCode code = build_trivial(plan.q, plan.v, plan.k, plan.d);
      check_plan_header(plan, code);
      return code;
    }
    case PlanNode::Kind::spread: {
      expect_children(plan, 0);
      if (plan.d > 2 * plan.k)
        throw std::invalid_argument("spread plan cannot claim distance above 2k");
      CDCCode code = with_claimed_distance(build_spread(plan.q, plan.v, plan.k), plan.d);
      check_plan_header(plan, code);
      return code;
    }
    case PlanNode::Kind::lifted_mrd: {
      expect_children(plan, 0);
      expect_rmcs(plan, 1);
      const RmcSpec& spec = plan.rmcs[0];
      if (spec.a != plan.k || spec.a + spec.b != plan.v || 2 * spec.d < plan.d)
        throw std::invalid_argument("lifted plan needs a k x (v-k) ingredient of distance d/2");
      std::vector<Mat> words = realize_rmc(spec, opt.max_rmc_enumeration);
      RankCode rmc(spec.q, spec.a, spec.b, spec.d,
                   spec.u > 0 ? std::optional<int>(spec.u) : std::nullopt, std::move(words));
      CDCCode code = with_claimed_distance(lift_rmc(rmc), plan.d);
      check_plan_header(plan, code);
      return code;
    }
    case PlanNode::Kind::complement: {
      expect_children(plan, 1);
      CDCCode inner = construct_from_plan(*plan.children[0], opt);
      CDCCode code = with_claimed_distance(complement_code(inner), plan.d);
      check_plan_header(plan, code);
      return code;
    }
    case PlanNode::Kind::linkage_original:
    case PlanNode::Kind::linkage_improved:
    case PlanNode::Kind::linkage_parallel_ti:
    case PlanNode::Kind::linkage_generalized: {
      validate_linkage_shape(plan);
      CDCCode a = construct_from_plan(*plan.children[0], opt);
      CDCCode b = construct_from_plan(*plan.children[1], opt);
      std::vector<Mat> m_words = realize_rmc(plan.rmcs[0], opt.max_rmc_enumeration);
      std::vector<Mat> r_words = realize_rmc(plan.rmcs[1], opt.max_rmc_enumeration);
      CDCCode code = construct_generalized_linkage(plan.q, plan.d, plan.k, plan.r, plan.s,
                                                   plan.t, a, b, m_words, r_words);
      check_plan_header(plan, code);
      return code;
    }
    case PlanNode::Kind::linkage_multiblock: {
      const size_t m = plan.block_sizes.size();
      expect_children(plan, m);
      expect_rmcs(plan, 3 * m);
      if (plan.block_hang.size() != m)
        throw std::invalid_argument("multiblock plan: one hang value per block required");
      std::vector<CDCCode> a;
      a.reserve(m);
      for (size_t i = 0; i < m; ++i) a.push_back(construct_from_plan(*plan.children[i], opt));
      std::vector<std::vector<Mat>> mm(m), rr(m), ss(m);
      for (size_t i = 0; i < m; ++i) {
        mm[i] = realize_rmc(plan.rmcs[i], opt.max_rmc_enumeration);
        rr[i] = realize_rmc(plan.rmcs[m + i], opt.max_rmc_enumeration);
        ss[i] = realize_rmc(plan.rmcs[2 * m + i], opt.max_rmc_enumeration);
      }
      CDCCode code = construct_multiblock(plan.q, plan.d, plan.k, plan.block_sizes,
                                          plan.block_hang, a, mm, rr, ss);
      check_plan_header(plan, code);
      return code;
    }
  }
  throw std::logic_error("unhandled plan kind");
}

namespace {

class OwningCdcSource final : public SubspaceSource {
 public:
  explicit OwningCdcSource(CDCCode code) : code_(std::move(code)) {}
  size_t size() const override { return code_.words().size(); }
  Subspace word(size_t i) const override { return code_.words()[i]; }
  int q() const override { return code_.q(); }
  int ambient() const override { return code_.v(); }
  int dim() const override { return code_.k(); }

 private:
  CDCCode code_;
};

// Two-block linkage whose word count exceeds the materialization budget:
// ingredients are held in memory, assembled words are built on demand.
class LazyLinkageSource final : public SubspaceSource {
 public:
  LazyLinkageSource(int q, int v, int k, CDCCode a, CDCCode b, std::vector<Mat> m,
                    std::vector<Mat> r)
      : q_(q), v_(v), k_(k), a_(std::move(a)), b_(std::move(b)), m_(std::move(m)),
        r_(std::move(r)) {
    first_ = a_.words().size() * m_.size();
    total_ = first_ + r_.size() * b_.words().size();
  }

  size_t size() const override { return total_; }
  Subspace word(size_t i) const override {
    if (i < first_) {
      const Subspace& a = a_.words()[i / m_.size()];
      return linkage_first_part_word(a, m_[i % m_.size()]);
    }
    const size_t j = i - first_;
    const Mat& rr = r_[j / b_.words().size()];
    return linkage_second_part_word(rr, b_.words()[j % b_.words().size()]);
  }
  int q() const override { return q_; }
  int ambient() const override { return v_; }
  int dim() const override { return k_; }

 private:
  int q_, v_, k_;
  CDCCode a_;
  CDCCode b_;
  std::vector<Mat> m_;
  std::vector<Mat> r_;
  size_t first_ = 0, total_ = 0;
};

}  // namespace

std::unique_ptr<SubspaceSource> make_linkage_source(const PlanNode& plan,
                                                    const ConstructOptions& opt) {
  if (plan.size <= BigCount(opt.max_words))
    return std::make_unique<OwningCdcSource>(construct_from_plan(plan, opt));

  const bool two_block = plan.kind == PlanNode::Kind::linkage_original ||
                         plan.kind == PlanNode::Kind::linkage_improved ||
                         plan.kind == PlanNode::Kind::linkage_parallel_ti ||
                         plan.kind == PlanNode::Kind::linkage_generalized;
  if (!two_block)
    throw BudgetError("lazy word access supports only two-block linkage plans; " +
                          plan.kind_name() + " of " + plan.size.str() + " words must fit",
                      opt.max_words);

  validate_linkage_shape(plan);
  CDCCode a = construct_from_plan(*plan.children[0], opt);
  CDCCode b = construct_from_plan(*plan.children[1], opt);
  std::vector<Mat> m_words = realize_rmc(plan.rmcs[0], opt.max_rmc_enumeration);
  std::vector<Mat> r_words = realize_rmc(plan.rmcs[1], opt.max_rmc_enumeration);
  validate_linkage(plan.q, plan.d, plan.k, plan.r, plan.s, plan.t, a, b, m_words, r_words);

  auto src = std::make_unique<LazyLinkageSource>(plan.q, plan.v, plan.k, std::move(a),
                                                 std::move(b), std::move(m_words),
                                                 std::move(r_words));
  if (BigCount(src->size()) != plan.size)
    throw std::logic_error("plan node " + plan.kind_name() + " promised " + plan.size.str() +
                           " words, lazy source has " + std::to_string(src->size()));
  return src;
}

}  // namespace cdc
