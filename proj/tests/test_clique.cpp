#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <stdexcept>
#include <vector>

#include "json.hpp"

#include "cdc/bigint.hpp"
#include "cdc/clique.hpp"
#include "cdc/errors.hpp"
#include "cdc/matrix.hpp"
#include "cdc/mrd.hpp"
#include "cdc/qcount.hpp"
#include "cdc/subspace.hpp"
#include "cdc/verify.hpp"

using namespace cdc;

namespace {

BigCount rank_at_most(int q, int a, int b, int u) {
  BigCount n = 0;
  for (int r = 0; r <= u; ++r) n += count_matrices_of_rank(q, a, b, r);
  return n;
}

}  // namespace

TEST_CASE("compatibility graph: vertex census and edge criterion") {
  RankGraph g = build_rank_graph(2, 3, 3, 2, 1);
  CHECK(BigCount(g.vertices.size()) == rank_at_most(2, 3, 3, 1));
  CHECK(g.vertices.size() == 50);
  for (size_t i = 1; i < g.vertices.size(); ++i)
    CHECK(g.vertices[i - 1] < g.vertices[i]);  // canonical vertex order
  for (size_t i = 0; i < g.vertices.size(); ++i) {
    CHECK_FALSE(g.edge(i, i));
    for (size_t j = i + 1; j < g.vertices.size(); ++j) {
      bool want = rank_distance(g.vertices[i], g.vertices[j]) >= g.d;
      CHECK(g.edge(i, j) == want);
      CHECK(g.edge(j, i) == want);
    }
  }
  CHECK(BigCount(build_rank_graph(2, 3, 3, 2, 2).vertices.size()) == rank_at_most(2, 3, 3, 2));
  CHECK_THROWS_AS(build_rank_graph(2, 4, 4, 2, 2, 100), BudgetError);  // vertex budget
}

TEST_CASE("every processing order finds the same maximum") {
  struct Case {
    int q, a, b, d, u, want;
  };
  for (Case c : {Case{2, 2, 2, 2, 1, 3}, Case{3, 2, 2, 2, 1, 4}, Case{2, 3, 2, 2, 1, 3},
                 Case{2, 3, 3, 2, 1, 7}}) {
    RankGraph g = build_rank_graph(c.q, c.a, c.b, c.d, c.u);
    for (CliqueOrder order : {CliqueOrder::structured, CliqueOrder::rank_lex,
                              CliqueOrder::rank_desc, CliqueOrder::degree_desc,
                              CliqueOrder::degree_asc, CliqueOrder::input}) {
      CliqueOptions opt;
      opt.order = order;
      CliqueResult res = max_clique(g, {}, opt);
      CAPTURE(c.q);
      CAPTURE(static_cast<int>(order));
      CHECK(res.size == c.want);
      CHECK(res.witness.size() == static_cast<size_t>(c.want));
      // The witness is one of the cliques it claims to be.
      for (size_t i = 0; i < res.witness.size(); ++i)
        for (size_t j = i + 1; j < res.witness.size(); ++j)
          CHECK(rank_distance(res.witness[i], res.witness[j]) >= c.d);
    }
  }
}

TEST_CASE("the search is deterministic") {
  RankGraph g = build_rank_graph(2, 3, 3, 2, 1);
  CliqueResult a = max_clique(g);
  CliqueResult b = max_clique(g);
  CHECK(a.size == b.size);
  CHECK(a.nodes_explored == b.nodes_explored);
  CHECK(a.witness == b.witness);
  CHECK(a.n_vertices == g.vertices.size());
  CHECK(a.n_edges == b.n_edges);
}

TEST_CASE("node budget aborts instead of returning a partial answer") {
  RankGraph g = build_rank_graph(2, 3, 3, 2, 1);
  CliqueOptions opt;
  opt.max_nodes = 1;
  CHECK_THROWS_AS(max_clique(g, {}, opt), BudgetError);
}

TEST_CASE("incumbents are validated, not trusted") {
  RankGraph g = build_rank_graph(2, 3, 3, 2, 1);

  // A matrix outside the vertex set (rank 2 > cap 1).
  Mat outside = Mat::from_rows(FieldContext::get(2), {{1, 0, 0}, {0, 1, 0}, {0, 0, 0}});
  REQUIRE(rank(outside) == 2);
  CHECK_THROWS_AS(max_clique(g, {outside}), std::logic_error);

  // Two rank-one vertices at rank distance 1: not a clique.
  Mat e11 = Mat::from_rows(FieldContext::get(2), {{1, 0, 0}, {0, 0, 0}, {0, 0, 0}});
  Mat both = Mat::from_rows(FieldContext::get(2), {{1, 1, 0}, {0, 0, 0}, {0, 0, 0}});
  REQUIRE(rank_distance(e11, both) == 1);
  CHECK_THROWS_AS(max_clique(g, {e11, both}), std::logic_error);

  // A genuine clique passes through and cannot be beaten by less.
  CliqueResult first = max_clique(g);
  CliqueResult seeded = max_clique(g, first.witness);
  CHECK(seeded.size == first.size);
}

TEST_CASE("exact search reproduces the smallest frozen values quickly") {
  CliqueResult res = lambda_exact_clique(2, 3, 3, 2, 1);
  CHECK(res.size == 7);
  CHECK(res.n_vertices == 50);
  CliqueResult res2 = lambda_exact_clique(3, 2, 2, 2, 1);
  CHECK(res2.size == 4);
}

TEST_CASE("certificates round-trip through JSON into a verifiable code") {
  CliqueResult res = lambda_exact_clique(2, 3, 3, 2, 1);
  std::string cert = clique_certificate_json(res, 2, 3, 3, 2, 1);

  nlohmann::json j = nlohmann::json::parse(cert);
  CHECK(j.at("q") == 2);
  CHECK(j.at("d") == 2);
  CHECK(j.at("u") == 1);
  CHECK(j.at("clique_size") == 7);
  CHECK(j.at("vertices").size() == 7);

  RankCode code = clique_certificate_to_rank_code(cert);
  CHECK(code.size() == 7);
  CHECK(code.d_claimed() == 2);
  CHECK(code.u_claimed() == 1);
  VerifyReport rep = verify_rmc(code);
  CHECK(rep.certified);
  CHECK_FALSE(rep.falsified);
  CHECK(rep.min_distance_observed.has_value());
  CHECK(*rep.min_distance_observed >= 2);
}

TEST_CASE("progress tracing does not disturb the result") {
  RankGraph g = build_rank_graph(2, 2, 2, 2, 1);
  CliqueOptions opt;
  opt.trace = true;
  CHECK(max_clique(g, {}, opt).size == 3);
}
