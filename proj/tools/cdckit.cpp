// cdckit: command-line frontend for the subspace-coding toolkit.
//
// Subcommands:
//   construct  build a code for (q, v, d, k), write it to a file with a
//              sidecar JSON plan, print the cardinality
//   verify     check the pairwise minimum distance of a code file
//   lambda     bounds (and optionally the exact value) of the maximum size
//              of a rank-restricted rank-metric code
//   table      best-known lower/upper bounds for A_q(v, d; k) over a range
//              of ambient dimensions, as CSV or JSON
//   compare    per-construction breakdown at a single parameter set
//
// Exit codes: 0 success / certified / not falsified, 1 falsified or violated,
// 2 usage or input error, 3 budget exceeded.

#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cdc/bounds.hpp"
#include "cdc/clique.hpp"
#include "cdc/codefile.hpp"
#include "cdc/construct.hpp"
#include "cdc/errors.hpp"
#include "cdc/lambda.hpp"
#include "cdc/plan.hpp"
#include "cdc/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolated = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct ConstructArgs {
  int q = 2, v = 0, d = 0, k = 0;
  std::string out;
  std::string plan_out;
  std::string plan_in;
  std::string seeds;
  uint64_t max_words = uint64_t{1} << 20;
};

int run_construct(const ConstructArgs& a) {
  if ((a.d + 1) / 2 > a.k) {
    throw cdc::ConstraintError("d/2 <= k",
                               "d=" + std::to_string(a.d) + ", k=" + std::to_string(a.k));
  }
  cdc::PlanPtr plan;
  if (!a.plan_in.empty()) {
    plan = cdc::plan_from_json(read_text_file(a.plan_in));
  } else {
    cdc::SeedSet seeds;
    if (!a.seeds.empty()) seeds = cdc::SeedSet::from_json_file(a.seeds);
    cdc::BoundsEngine engine(std::move(seeds));
    plan = cdc::clone_plan(engine.constructible_plan(a.q, a.v, a.d, a.k));
  }

  cdc::ConstructOptions opt;
  opt.max_words = a.max_words;
  cdc::CDCCode code = cdc::construct_from_plan(*plan, opt);

  std::string out_path = a.out;
  if (out_path.empty()) {
    out_path = "cdc_q" + std::to_string(code.q()) + "_v" + std::to_string(code.v()) + "_d" +
               std::to_string(code.d_claimed()) + "_k" + std::to_string(code.k()) + ".txt";
  }
  write_text_file(out_path, cdc::to_code_file(code));
  std::string plan_path = a.plan_out.empty() ? out_path + ".plan.json" : a.plan_out;
  write_text_file(plan_path, cdc::plan_to_json(*plan));

  std::cout << "N " << code.size() << "\n";
  std::cout << "code " << out_path << "\n";
  std::cout << "plan " << plan_path << "\n";
  return kExitOk;
}

struct VerifyArgs {
  std::string file;
  uint64_t sample = 0;
  uint64_t seed = 0;
  bool no_pivot_filter = false;
  uint64_t max_words = uint64_t{1} << 22;
};

int run_verify(const VerifyArgs& a) {
  cdc::AnyCode code = cdc::read_code_file(a.file, a.max_words);
  cdc::VerifyOptions opt;
  opt.use_pivot_filter = !a.no_pivot_filter;
  cdc::VerifyReport rep;
  if (std::holds_alternative<cdc::CDCCode>(code)) {
    const cdc::CDCCode& c = std::get<cdc::CDCCode>(code);
    rep = a.sample > 0 ? cdc::verify_cdc_sampled(cdc::CdcSourceView(c), c.d_claimed(), a.sample,
                                                 a.seed, opt)
                       : cdc::verify_cdc(c, opt);
  } else {
    const cdc::RankCode& c = std::get<cdc::RankCode>(code);
    rep = a.sample > 0 ? cdc::verify_rmc_sampled(c, a.sample, a.seed, opt) : cdc::verify_rmc(c, opt);
  }
  std::cout << rep.to_json() << "\n";
  return rep.falsified ? kExitViolated : kExitOk;
}

struct LambdaArgs {
  int q = 2, a = 0, b = 0, d = 0, u = 0;
  bool exact = false;
  std::string cert;
  uint64_t max_nodes = 20'000'000'000;
  uint64_t max_vertices = 10000;
};

int run_lambda(const LambdaArgs& a) {
  cdc::BoundsEngine engine;
  cdc::LambdaBounds bounds = engine.lambda(a.q, a.a, a.b, a.d, a.u);
  if (a.exact) {
    cdc::CliqueOptions opt;
    opt.max_nodes = a.max_nodes;
    opt.max_vertices = a.max_vertices;
    cdc::CliqueResult res = cdc::lambda_exact_clique(a.q, a.a, a.b, a.d, a.u, opt);
    bounds.lower = res.size;
    bounds.upper = res.size;
    bounds.exact = true;
    bounds.lower_source = "exact clique search";
    bounds.upper_source = "exact clique search";
    std::string cert_path = a.cert;
    if (cert_path.empty()) {
      cert_path = "lambda_q" + std::to_string(a.q) + "_a" + std::to_string(a.a) + "_b" +
                  std::to_string(a.b) + "_d" + std::to_string(a.d) + "_u" + std::to_string(a.u) +
                  "_cert.json";
    }
    write_text_file(cert_path, cdc::clique_certificate_json(res, a.q, a.a, a.b, a.d, a.u));
    std::cout << bounds.to_json() << "\n";
    std::cout << "certificate " << cert_path << "\n";
    return kExitOk;
  }
  std::cout << bounds.to_json() << "\n";
  return kExitOk;
}

struct TableArgs {
  int q = 2, d = 0, k = 0, v_max = 0;
  std::string seeds;
  std::string format = "csv";
  std::string out;
};

int run_table(const TableArgs& a) {
  cdc::SeedSet seeds;
  if (!a.seeds.empty()) seeds = cdc::SeedSet::from_json_file(a.seeds);
  cdc::BoundsEngine engine(std::move(seeds));
  std::vector<const cdc::BoundEntry*> rows = engine.compute_table(a.q, a.d, a.k, a.v_max);
  std::string text = a.format == "json" ? cdc::table_to_json(rows) : cdc::table_to_csv(rows);
  if (a.out.empty()) {
    std::cout << text;
  } else {
    write_text_file(a.out, text);
    std::cout << "table " << a.out << "\n";
  }
  return kExitOk;
}

struct CompareArgs {
  int q = 2, v = 0, d = 0, k = 0;
  std::string seeds;
};

int run_compare(const CompareArgs& a) {
  cdc::SeedSet seeds;
  if (!a.seeds.empty()) seeds = cdc::SeedSet::from_json_file(a.seeds);
  cdc::BoundsEngine engine(std::move(seeds));
  std::cout << engine.compare_constructions(a.q, a.v, a.d, a.k).to_json();
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cdckit: constant-dimension subspace code toolkit"};
  app.require_subcommand(1);

  ConstructArgs ca;
  CLI::App* construct = app.add_subcommand("construct", "build a code and write it to a file");
  construct->add_option("--q", ca.q, "field size")->required();
  construct->add_option("--v", ca.v, "ambient dimension")->required();
  construct->add_option("--d", ca.d, "minimum subspace distance")->required();
  construct->add_option("--k", ca.k, "codeword dimension")->required();
  construct->add_option("--out", ca.out, "output code file (default derived from parameters)");
  construct->add_option("--plan-out", ca.plan_out, "sidecar plan path (default <out>.plan.json)");
  construct->add_option("--plan", ca.plan_in, "build this plan file instead of the best known");
  construct->add_option("--seeds", ca.seeds, "seed file for ingredient table values");
  construct->add_option("--max-words", ca.max_words, "refuse to materialize more words than this");

  VerifyArgs va;
  CLI::App* verify = app.add_subcommand("verify", "verify the distance claim of a code file");
  verify->add_option("file", va.file, "code file")->required();
  verify->add_option("--sample", va.sample, "check this many random pairs instead of all");
  verify->add_option("--seed", va.seed, "random generator seed for --sample");
  verify->add_flag("--no-pivot-filter", va.no_pivot_filter, "disable the pivot-distance skip");
  verify->add_option("--max-words", va.max_words, "refuse to load more words than this");

  LambdaArgs la;
  CLI::App* lambda = app.add_subcommand(
      "lambda", "bounds for the maximum rank-restricted rank-metric code size");
  lambda->add_option("--q", la.q, "field size")->required();
  lambda->add_option("--a", la.a, "matrix rows")->required();
  lambda->add_option("--b", la.b, "matrix columns")->required();
  lambda->add_option("--d", la.d, "minimum rank distance")->required();
  lambda->add_option("--u", la.u, "maximum codeword rank")->required();
  lambda->add_flag("--exact", la.exact, "run the exact clique search and write a certificate");
  lambda->add_option("--cert", la.cert, "certificate path (default derived from parameters)");
  lambda->add_option("--max-nodes", la.max_nodes, "clique search node budget");

  TableArgs ta;
  CLI::App* table = app.add_subcommand("table", "lower/upper bound table over ambient dimensions");
  table->add_option("--q", ta.q, "field size")->required();
  table->add_option("--d", ta.d, "minimum subspace distance")->required();
  table->add_option("--k", ta.k, "codeword dimension")->required();
  table->add_option("--v-max", ta.v_max, "largest ambient dimension")->required();
  table->add_option("--seeds", ta.seeds, "seed file with externally known lower bounds");
  table->add_option("--format", ta.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  table->add_option("--out", ta.out, "write the table here instead of stdout");

  CompareArgs pa;
  CLI::App* compare = app.add_subcommand("compare", "per-construction breakdown at one key");
  compare->add_option("--q", pa.q, "field size")->required();
  compare->add_option("--v", pa.v, "ambient dimension")->required();
  compare->add_option("--d", pa.d, "minimum subspace distance")->required();
  compare->add_option("--k", pa.k, "codeword dimension")->required();
  compare->add_option("--seeds", pa.seeds, "seed file with externally known lower bounds");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help and --version exit 0; every other parse failure is a usage error.
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (construct->parsed()) return run_construct(ca);
    if (verify->parsed()) return run_verify(va);
    if (lambda->parsed()) return run_lambda(la);
    if (table->parsed()) return run_table(ta);
    if (compare->parsed()) return run_compare(pa);
  } catch (const cdc::BudgetError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const cdc::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
