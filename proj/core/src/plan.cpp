#include "cdc/plan.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

#include "cdc/errors.hpp"
#include "cdc/qcount.hpp"

#include "json.hpp"

namespace cdc {

namespace {

using nlohmann::json;

constexpr std::array<const char*, 5> kRmcKindNames = {"zero", "empty_cols", "mrd", "delta_subset",
                                                      "product"};
constexpr std::array<const char*, 9> kPlanKindNames = {
    "trivial",           "spread",
    "lifted_mrd",        "linkage_original",
    "linkage_improved",  "linkage_parallel_ti",
    "linkage_generalized", "linkage_multiblock",
    "complement"};

template <size_t N>
int kind_index(const std::array<const char*, N>& names, const std::string& s) {
  for (size_t i = 0; i < N; ++i) {
    if (s == names[i]) return static_cast<int>(i);
  }
  throw ParseError("unknown kind '" + s + "'");
}

}  // namespace

std::string RmcSpec::kind_name() const { return kRmcKindNames[static_cast<size_t>(kind)]; }

BigCount RmcSpec::predicted_size() const {
  switch (kind) {
    case Kind::zero:
    case Kind::empty_cols:
      return 1;
    case Kind::mrd:
      return mrd_size(q, a, b, d);
    case Kind::delta_subset:
      return delta_bound(q, a, b, d, u);
    case Kind::product: {
      // one word per pair of spread members; the smaller side limits
      const int n = std::min(a, b);
      return (big_pow(q, n) - 1) / (big_pow(q, u) - 1);
    }
  }
  throw std::logic_error("unreachable rmc kind");
}

std::string PlanNode::kind_name() const { return kPlanKindNames[static_cast<size_t>(kind)]; }

PlanPtr clone_plan(const PlanNode& node) {
  auto out = std::make_unique<PlanNode>();
  out->kind = node.kind;
  out->q = node.q;
  out->v = node.v;
  out->k = node.k;
  out->d = node.d;
  out->size = node.size;
  out->r = node.r;
  out->s = node.s;
  out->t = node.t;
  out->block_sizes = node.block_sizes;
  out->block_hang = node.block_hang;
  out->rmcs = node.rmcs;
  out->children.reserve(node.children.size());
  for (const auto& c : node.children) out->children.push_back(clone_plan(*c));
  return out;
}

namespace {

json rmc_to_json_obj(const RmcSpec& m) {
  return json{{"kind", m.kind_name()}, {"q", m.q}, {"a", m.a},
              {"b", m.b},              {"d", m.d}, {"u", m.u}};
}

RmcSpec rmc_from_json_obj(const json& j) {
  RmcSpec m;
  m.kind = static_cast<RmcSpec::Kind>(kind_index(kRmcKindNames, j.at("kind").get<std::string>()));
  m.q = j.at("q").get<int>();
  m.a = j.at("a").get<int>();
  m.b = j.at("b").get<int>();
  m.d = j.at("d").get<int>();
  m.u = j.at("u").get<int>();
  return m;
}

json plan_to_json_obj(const PlanNode& n) {
  json j;
  j["kind"] = n.kind_name();
  j["q"] = n.q;
  j["v"] = n.v;
  j["k"] = n.k;
  j["d"] = n.d;
  j["size"] = n.size.str();
  if (n.r || n.s || n.t) {
    j["r"] = n.r;
    j["s"] = n.s;
    j["t"] = n.t;
  }
  if (!n.block_sizes.empty()) j["block_sizes"] = n.block_sizes;
  if (!n.block_hang.empty()) j["block_hang"] = n.block_hang;
  if (!n.rmcs.empty()) {
    json arr = json::array();
    for (const RmcSpec& m : n.rmcs) arr.push_back(rmc_to_json_obj(m));
    j["rmcs"] = arr;
  }
  if (!n.children.empty()) {
    json arr = json::array();
    for (const auto& c : n.children) arr.push_back(plan_to_json_obj(*c));
    j["children"] = arr;
  }
  return j;
}

PlanPtr plan_from_json_obj(const json& j) {
  auto n = std::make_unique<PlanNode>();
  n->kind =
      static_cast<PlanNode::Kind>(kind_index(kPlanKindNames, j.at("kind").get<std::string>()));
  n->q = j.at("q").get<int>();
  n->v = j.at("v").get<int>();
  n->k = j.at("k").get<int>();
  n->d = j.at("d").get<int>();
  n->size = BigCount(j.at("size").get<std::string>());
  n->r = j.value("r", 0);
  n->s = j.value("s", 0);
  n->t = j.value("t", 0);
  if (j.contains("block_sizes")) n->block_sizes = j.at("block_sizes").get<std::vector<int>>();
  if (j.contains("block_hang")) n->block_hang = j.at("block_hang").get<std::vector<int>>();
  if (j.contains("rmcs")) {
    for (const json& m : j.at("rmcs")) n->rmcs.push_back(rmc_from_json_obj(m));
  }
  if (j.contains("children")) {
    for (const json& c : j.at("children")) n->children.push_back(plan_from_json_obj(c));
  }
  return n;
}

}  // namespace

std::string plan_to_json(const PlanNode& root) {
  json j;
  j["format_version"] = 1;
  j["plan"] = plan_to_json_obj(root);
  return j.dump(2);
}

PlanPtr plan_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    return plan_from_json_obj(j.at("plan"));
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid plan JSON: ") + e.what());
  }
}

}  // namespace cdc
