#include "stackspt/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <ostream>

#include "stackspt/errors.hpp"
#include "stackspt/instance.hpp"
#include "stackspt/lex_dijkstra.hpp"
#include "stackspt/random.hpp"
#include "stackspt/revenue_oracle.hpp"
#include "stackspt/solver.hpp"

namespace stackspt::cli {
namespace {

struct GenFlags {
  std::size_t n = 0;
  std::size_t m = 0;
  std::uint32_t k = 0;
  std::uint64_t seed = 0;
  std::int64_t cost_max = 10;
  std::int64_t demand_max = 1;
  bool fixed_spanning = false;
  std::string out;
};

struct EvalFlags {
  std::string instance;
  std::string prices;
  bool naive = false;
};

struct SolveFlags {
  std::string instance;
  std::string candidates;
  unsigned parallel = 1;
};

struct VerifyFlags {
  std::string instance;
  std::uint64_t trials = 100;
  std::uint64_t seed = 1;
  bool random = false;
  std::size_t count = 50;
  std::size_t n_min = 10;
  std::size_t n_max = 200;
  std::uint32_t k_min = 2;
  std::uint32_t k_max = 4;
  std::size_t m_factor = 5;
  bool csv = false;
  bool inject_fault = false;
};

struct BenchFlags {
  std::string sizes = "2^10,...,2^17";
  std::uint32_t k = 2;
  std::size_t queries = 200;
  std::uint64_t seed = 1;
  std::size_t m_factor = 4;
};

int cmd_gen(const GenFlags& f, std::ostream& out) {
  RandomInstanceParams params;
  params.n = f.n;
  params.m = f.m;
  params.k = f.k;
  params.seed = f.seed;
  params.cost_max = f.cost_max;
  params.demand_max = f.demand_max;
  params.fixed_spanning = f.fixed_spanning;
  const std::string text = serialize_instance(random_instance(params));
  if (f.out.empty()) {
    out << text;
  } else {
    std::ofstream file(f.out, std::ios::binary);
    if (!file || !(file << text)) throw std::runtime_error("cannot write '" + f.out + "'");
  }
  return kExitOk;
}

int cmd_eval(const EvalFlags& f, std::ostream& out, std::ostream& err) {
  const Instance instance = read_instance_file(f.instance);
  const PriceFunction prices = PriceFunction::parse(f.prices);
  check_prices(instance, prices);
  ExtRational value;
  if (instance.priceable_count() >= 2) {
    value = RevenueOracle(instance).revenue(prices);
  } else {
    value = naive_revenue(instance, prices);
  }
  out << value << '\n';
  if (f.naive) {
    const ExtRational reference = naive_revenue(instance, prices);
    out << "naive " << reference << '\n';
    if (reference != value) {
      err << "mismatch: fast " << value << " != naive " << reference << '\n';
      return kExitVerifyFailed;
    }
  }
  return kExitOk;
}

int cmd_solve(const SolveFlags& f, std::ostream& out) {
  const Instance instance = read_instance_file(f.instance);
  const CandidateSet candidates =
      f.candidates.empty() ? heuristic_candidates(instance) : read_candidates_file(f.candidates, instance.priceable_count());
  const SolveResult result = solve(instance, candidates, SolveOptions{f.parallel});
  out << "prices " << result.best_price.to_string() << '\n';
  out << "revenue " << result.best_revenue << '\n';
  out << "evaluations " << result.evaluations << '\n';
  return kExitOk;
}

int cmd_verify(const VerifyFlags& f, std::ostream& out, std::ostream& err) {
  const OracleOptions options{32, f.inject_fault};
  std::vector<std::pair<std::string, Instance>> fleet;
  if (f.random) {
    if (f.n_min < 2 || f.n_max < f.n_min || f.k_min < 1 || f.k_max < f.k_min) {
      throw ValidationError("random", "need 2 <= n-min <= n-max and 1 <= k-min <= k-max");
    }
    Rng rng(f.seed);
    for (std::size_t c = 0; c < f.count; ++c) {
      RandomInstanceParams params;
      params.n = static_cast<std::size_t>(uniform_int(rng, static_cast<std::int64_t>(f.n_min), static_cast<std::int64_t>(f.n_max)));
      params.k = static_cast<std::uint32_t>(uniform_int(rng, f.k_min, f.k_max));
      const auto m_lo = static_cast<std::int64_t>(std::max<std::size_t>(params.n - 1, params.k));
      const auto m_hi = std::max<std::int64_t>(m_lo, static_cast<std::int64_t>(f.m_factor * params.n));
      params.m = static_cast<std::size_t>(uniform_int(rng, m_lo, m_hi));
      params.seed = rng();
      fleet.emplace_back("random-" + std::to_string(c), random_instance(params));
    }
  } else {
    if (f.instance.empty()) throw ValidationError("instance", "--instance or --random is required");
    fleet.emplace_back(f.instance, read_instance_file(f.instance));
  }

  if (f.csv) out << "instance," << trial_csv_header() << '\n';
  std::uint64_t trials = 0;
  std::uint64_t failures = 0;
  std::optional<std::string> counterexample;
  for (std::size_t c = 0; c < fleet.size(); ++c) {
    const auto report = verify_oracle(fleet[c].second, f.trials, f.seed + c, options);
    trials += report.trials;
    failures += report.failures;
    if (!counterexample && report.counterexample) counterexample = *report.counterexample;
    if (f.csv) {
      for (const auto& rec : report.records) out << c << ',' << trial_csv_row(rec) << '\n';
    }
  }
  if (!f.csv) {
    out << "instances " << fleet.size() << '\n' << "trials " << trials << '\n' << "failures " << failures << '\n';
    out << (failures == 0 ? "PASS" : "FAIL") << '\n';
  }
  if (failures != 0) {
    err << "counterexample:\n" << *counterexample;
    return kExitVerifyFailed;
  }
  return kExitOk;
}

int cmd_bench(const BenchFlags& f, std::ostream& out, std::ostream& err) {
  BenchConfig config;
  config.sizes = parse_sizes(f.sizes);
  config.k = f.k;
  config.queries = f.queries;
  config.seed = f.seed;
  config.m_factor = f.m_factor;
  out << bench_csv_header() << '\n';
  bool agree = true;
  for (const std::size_t n : config.sizes) {
    BenchConfig one = config;
    one.sizes = {n};
    const auto rec = run_bench(one, nullptr).front();
    out << bench_csv_row(rec) << '\n' << std::flush;
    agree = agree && rec.agree;
  }
  if (!agree) {
    err << "fast and naive revenues disagreed during the benchmark\n";
    return kExitVerifyFailed;
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Revenue oracle and price search for the Stackelberg shortest path tree game", "stackspt"};
  app.require_subcommand(1);

  GenFlags gen;
  auto* gen_cmd = app.add_subcommand("gen", "write a random instance");
  gen_cmd->add_option("--n", gen.n, "vertices")->required()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--m", gen.m, "edges")->required();
  gen_cmd->add_option("--k", gen.k, "priceable edges")->required()->check(CLI::Range(1u, kDefaultPriceableCap));
  gen_cmd->add_option("--seed", gen.seed, "random seed");
  gen_cmd->add_option("--cost-max", gen.cost_max, "largest fixed cost (costs are integers from 1)")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--demand-max", gen.demand_max, "largest demand (demands are integers from 1)")->check(CLI::PositiveNumber);
  gen_cmd->add_flag("--fixed-spanning", gen.fixed_spanning, "keep every vertex reachable without priceable edges");
  gen_cmd->add_option("--out", gen.out, "output file (default: standard output)");

  EvalFlags eval;
  auto* eval_cmd = app.add_subcommand("eval", "revenue of one price vector");
  eval_cmd->add_option("--instance", eval.instance, "instance file")->required();
  eval_cmd->add_option("--prices", eval.prices, "comma separated prices p1,...,pk")->required();
  eval_cmd->add_flag("--naive", eval.naive, "also evaluate directly and compare");

  SolveFlags solve_flags;
  auto* solve_cmd = app.add_subcommand("solve", "best price vector over a candidate set");
  solve_cmd->add_option("--instance", solve_flags.instance, "instance file")->required();
  solve_cmd->add_option("--candidates", solve_flags.candidates, "candidate file (default: breakpoint heuristic)");
  solve_cmd->add_option("--parallel", solve_flags.parallel, "worker threads")->check(CLI::PositiveNumber);

  VerifyFlags verify;
  auto* verify_cmd = app.add_subcommand("verify", "cross-check the fast oracle against direct evaluation");
  verify_cmd->add_option("--instance", verify.instance, "instance file");
  verify_cmd->add_option("--trials", verify.trials, "price vectors per instance");
  verify_cmd->add_option("--seed", verify.seed, "random seed");
  verify_cmd->add_flag("--random", verify.random, "verify a fleet of random instances");
  verify_cmd->add_option("--count", verify.count, "number of random instances");
  verify_cmd->add_option("--n-min", verify.n_min, "smallest random instance");
  verify_cmd->add_option("--n-max", verify.n_max, "largest random instance");
  verify_cmd->add_option("--k-min", verify.k_min, "fewest priceable edges");
  verify_cmd->add_option("--k-max", verify.k_max, "most priceable edges")->check(CLI::Range(1u, kDefaultPriceableCap));
  verify_cmd->add_option("--m-factor", verify.m_factor, "random instances have at most m-factor * n edges");
  verify_cmd->add_flag("--csv", verify.csv, "per-trial CSV on standard output");
  verify_cmd->add_flag("--inject-fault", verify.inject_fault, "testing hook: corrupt the oracle's tie handling");

  BenchFlags bench;
  auto* bench_cmd = app.add_subcommand("bench", "fast query vs direct evaluation timings as CSV");
  bench_cmd->add_option("--sizes", bench.sizes, "vertex counts, e.g. 2^10,...,2^17");
  bench_cmd->add_option("--k", bench.k, "priceable edges")->check(CLI::Range(1u, kDefaultPriceableCap));
  bench_cmd->add_option("--queries", bench.queries, "price vectors per size")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--seed", bench.seed, "random seed");
  bench_cmd->add_option("--m-factor", bench.m_factor, "edges per vertex")->check(CLI::PositiveNumber);
  bench_cmd->add_flag("--csv", "CSV output (always on for bench)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen_cmd) return cmd_gen(gen, out);
    if (*eval_cmd) return cmd_eval(eval, out, err);
    if (*solve_cmd) return cmd_solve(solve_flags, out);
    if (*verify_cmd) return cmd_verify(verify, out, err);
    if (*bench_cmd) return cmd_bench(bench, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace stackspt::cli
