#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ostream>
#include <set>
#include <stdexcept>

#include "stackspt/cli.hpp"
#include "stackspt/lex_dijkstra.hpp"
#include "stackspt/revenue_oracle.hpp"
#include "stackspt/solver.hpp"

namespace stackspt::cli {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::size_t parse_size_term(std::string_view term) {
  auto number = [&](std::string_view s) -> std::size_t {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string_view::npos) {
      throw std::invalid_argument("bad size '" + std::string(term) + "'");
    }
    return std::stoull(std::string(s));
  };
  if (const auto caret = term.find('^'); caret != std::string_view::npos) {
    const std::size_t base = number(term.substr(0, caret));
    const std::size_t exp = number(term.substr(caret + 1));
    std::size_t value = 1;
    for (std::size_t i = 0; i < exp; ++i) {
      if (value > (std::size_t{1} << 40) / std::max<std::size_t>(base, 1)) throw std::invalid_argument("size too large");
      value *= base;
    }
    return value;
  }
  return number(term);
}

}  // namespace

std::vector<std::size_t> parse_sizes(std::string_view text) {
  std::vector<std::string_view> terms;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = std::min(text.find(',', start), text.size());
    auto t = text.substr(start, comma - start);
    while (!t.empty() && t.front() == ' ') t.remove_prefix(1);
    while (!t.empty() && t.back() == ' ') t.remove_suffix(1);
    if (!t.empty()) terms.push_back(t);
    start = comma + 1;
  }
  std::vector<std::size_t> sizes;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i] != "...") {
      sizes.push_back(parse_size_term(terms[i]));
      continue;
    }
    if (sizes.empty() || i + 1 >= terms.size()) throw std::invalid_argument("'...' needs a size on both sides");
    const std::size_t last = parse_size_term(terms[i + 1]);
    for (std::size_t s = sizes.back() * 2; s < last; s *= 2) sizes.push_back(s);
  }
  if (sizes.empty()) throw std::invalid_argument("no sizes given");
  return sizes;
}

std::vector<BenchRecord> run_bench(const BenchConfig& config, std::ostream* progress) {
  std::vector<BenchRecord> records;
  for (const std::size_t n : config.sizes) {
    RandomInstanceParams params;
    params.n = n;
    params.m = config.m_factor * n;
    params.k = config.k;
    params.seed = config.seed + n;
    params.fixed_spanning = true;
    Instance instance = random_instance(params);

    BenchRecord rec;
    rec.n = n;
    rec.m = params.m;
    rec.k = config.k;
    rec.queries = config.queries;

    const auto build_start = Clock::now();
    const RevenueOracle oracle(instance);
    const PriceSampler sampler(oracle.instance(), oracle.distances());
    Rng rng(config.seed * 7919 + n);
    std::vector<PriceFunction> prices;
    prices.reserve(config.queries);
    std::set<ReducedTree> trees;
    for (std::size_t q = 0; q < config.queries; ++q) {
      prices.push_back(sampler.sample(rng));
      trees.insert(oracle.reduced_tree(prices.back()));
    }
    const std::vector<ReducedTree> warm(trees.begin(), trees.end());
    oracle.warm_up(warm);
    rec.build_s = seconds_since(build_start);

    std::vector<ExtRational> fast(prices.size());
    const auto probe = Clock::now();
    for (std::size_t q = 0; q < prices.size(); ++q) fast[q] = oracle.revenue(prices[q]);
    const double probe_s = std::max(seconds_since(probe), 1e-6);
    // Repeat short passes so each timed pass spans at least ~20 ms.
    const auto reps = static_cast<std::size_t>(std::max(1.0, 0.02 / probe_s));

    std::vector<double> pass_us;
    for (std::size_t pass = 0; pass < std::max<std::size_t>(config.fast_passes, 1); ++pass) {
      ExtRational sink;
      const auto start = Clock::now();
      for (std::size_t r = 0; r < reps; ++r) {
        for (const auto& p : prices) sink += oracle.revenue(p);
      }
      pass_us.push_back(seconds_since(start) * 1e6 / static_cast<double>(reps * prices.size()));
      if (sink < 0) throw std::logic_error("negative revenue");
    }
    std::sort(pass_us.begin(), pass_us.end());
    rec.fast_us = pass_us[pass_us.size() / 2];

    const auto naive_start = Clock::now();
    for (std::size_t q = 0; q < prices.size(); ++q) {
      if (naive_revenue(oracle.instance(), prices[q]) != fast[q]) rec.agree = false;
    }
    rec.naive_us = seconds_since(naive_start) * 1e6 / static_cast<double>(prices.size());

    if (progress) *progress << "# n=" << n << " done: fast " << rec.fast_us << " us, naive " << rec.naive_us << " us\n";
    records.push_back(rec);
  }
  return records;
}

std::string bench_csv_header() { return "n,m,k,build_s,fast_us,naive_us,speedup"; }

std::string bench_csv_row(const BenchRecord& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%zu,%zu,%u,%.6f,%.3f,%.3f,%.1f", r.n, r.m, r.k, r.build_s, r.fast_us, r.naive_us, r.speedup());
  return buf;
}

}  // namespace stackspt::cli
