#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cdc/matrix.hpp"
#include "cdc/subspace.hpp"

namespace cdc {

// Compatibility graph for rank-restricted code search: vertices are all
// a-by-b matrices over GF(q) of rank at most u, edges join pairs at rank
// distance at least d. Cliques are exactly the valid codes, so the maximum
// clique size equals the largest rank-restricted code for these parameters.
struct RankGraph {
  int q = 0, a = 0, b = 0, d = 0, u = 0;
  std::vector<Mat> vertices;            // sorted in canonical matrix order
  std::vector<std::vector<uint64_t>> adj;  // bitset adjacency rows

  bool edge(size_t i, size_t j) const { return (adj[i][j >> 6] >> (j & 63)) & 1; }
};

// Enumerates vertices by rank factorization (every rank-r matrix splits
// uniquely into a full-column-rank left factor times a reduced row-echelon
// right factor) and cross-checks the count against the closed-form matrix
// census. Throws BudgetError when the vertex count exceeds max_vertices.
RankGraph build_rank_graph(int q, int a, int b, int d, int u, uint64_t max_vertices = 10000);

struct CliqueResult {
  int size = 0;
  std::vector<Mat> witness;   // the clique itself, sorted
  uint64_t nodes_explored = 0;
  uint64_t n_vertices = 0;
  uint64_t n_edges = 0;
};

// Vertex processing order for the clique search. The suffix bounds are
// sensitive to it: the search is fastest when large cliques live among the
// high indices, because the best size then rises early and later stages
// prune with a wider gap. The structured order exploits that the zero
// matrix joins a code exactly with words of rank >= d: ranks d..u go on
// top (their block carries the large cliques and prunes cheaply), the zero
// matrix right below (completing the large clique early), and the ranks
// below d at the bottom, so their expensive refutations run last, against
// the best incumbent. The remaining orders exist for study and tests.
enum class CliqueOrder { structured, rank_lex, rank_desc, degree_desc, degree_asc, input };

struct CliqueOptions {
  uint64_t max_vertices = 10000;
  uint64_t max_nodes = 20'000'000'000;  // search tree nodes before giving up
  CliqueOrder order = CliqueOrder::structured;
  bool trace = false;  // progress lines on stderr while the search runs
};

// Exact maximum clique via suffix-incremental branch and bound: processing
// vertices from the back, the clique number of every suffix subgraph is
// recorded and reused as a pruning bound. `incumbent` vertices (if given)
// must be pairwise adjacent; they cross-check the result but do not steer
// the search. Deterministic for fixed input.
CliqueResult max_clique(const RankGraph& g, const std::vector<Mat>& incumbent = {},
                        const CliqueOptions& opt = {});

// Largest rank-restricted code size by exhaustive clique search, seeded with
// the rank-filtered MRD subset as the starting incumbent.
CliqueResult lambda_exact_clique(int q, int a, int b, int d, int u,
                                 const CliqueOptions& opt = {});

// Certificate round trip: the witness clique as JSON, and back as a RankCode
// so an independent rank-distance verification can re-check the claim.
std::string clique_certificate_json(const CliqueResult& res, int q, int a, int b, int d, int u);
RankCode clique_certificate_to_rank_code(const std::string& text);

}  // namespace cdc
