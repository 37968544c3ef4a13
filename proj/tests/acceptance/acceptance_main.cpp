// Acceptance suite: one PASS/FAIL line per criterion. Optional arguments pick
// a subset, e.g. `stackspt_acceptance 1 5`.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "stackspt/cli.hpp"
#include "stackspt/lex_dijkstra.hpp"
#include "stackspt/random.hpp"
#include "stackspt/range_tree.hpp"
#include "stackspt/revenue_oracle.hpp"
#include "stackspt/solver.hpp"

using namespace stackspt;

namespace {

// Pinned thresholds. Revenue and range-sum comparisons are exact rationals.
constexpr std::size_t kC1Instances = 50;
constexpr std::size_t kC1Prices = 200;
constexpr std::size_t kC3Instances = 20;
constexpr std::size_t kC3Prices = 20;
constexpr std::size_t kC3Permutations = 10;
constexpr std::size_t kC4Instances = 200;
constexpr std::size_t kC4MaxN = 8;
constexpr std::size_t kC5MaxPoints = 10000;
constexpr std::size_t kC5Rects = 1000;
constexpr std::uint32_t kC6MaxK = 12;
constexpr double kC7MinSpeedup = 10.0;
constexpr double kC7MaxFastGrowth = 8.0;
constexpr std::size_t kC8SingleInstances = 20;
constexpr std::size_t kC8Samples = 10000;
constexpr std::size_t kC8PairInstances = 10;

// Wall-clock budgets in seconds.
constexpr double kBudget[9] = {0, 180, 180, 60, 120, 120, 10, 600, 180};

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

Instance c1_instance(std::size_t index) {
  Rng rng(1000 + index);
  RandomInstanceParams params;
  params.n = static_cast<std::size_t>(uniform_int(rng, 10, 200));
  params.m = static_cast<std::size_t>(uniform_int(rng, static_cast<std::int64_t>(2 * params.n),
                                                  static_cast<std::int64_t>(5 * params.n)));
  params.k = static_cast<std::uint32_t>(uniform_int(rng, 2, 4));
  params.cost_max = index % 2 == 0 ? 5 : 20;
  params.demand_max = index % 3 == 0 ? 1 : 4;
  params.fixed_spanning = index % 2 == 1;
  params.seed = 5000 + index;
  return random_instance(params);
}

// Criteria 1 and 2 share the trials.
struct EquivalenceStats {
  std::uint64_t trials = 0;
  std::uint64_t revenue_mismatch = 0;
  std::uint64_t tree_mismatch = 0;
  std::uint64_t partition_mismatch = 0;
  std::uint64_t nonzero = 0;
  std::uint64_t multi_edge_trees = 0;
  std::string first_failure;
  double seconds = 0;
};

const EquivalenceStats& equivalence_run() {
  static const EquivalenceStats stats = [] {
    EquivalenceStats s;
    const auto start = Clock::now();
    for (std::size_t c = 0; c < kC1Instances; ++c) {
      const Instance inst = c1_instance(c);
      const RevenueOracle oracle(inst);
      const PriceSampler sampler(inst, oracle.distances());
      ExtRational total;
      for (const auto& phi : inst.demand()) total += phi;
      Rng rng(77 + c);
      for (std::size_t t = 0; t < kC1Prices; ++t) {
        const PriceFunction p = sampler.sample(rng);
        ++s.trials;
        const ExtRational fast = oracle.revenue(p);
        const ExtRational naive = naive_revenue(inst, p);
        const auto spt = lex_dijkstra(inst, p);
        const ReducedTree model_tree = oracle.reduced_tree(p);
        const ReducedTree contracted = ref::contract_by_walking(inst, spt.parent_edge);
        const auto last = ref::last_priceable_by_walking(inst, spt.parent_edge);
        ExtRational accounted;
        for (VertexId v = 0; v < inst.vertex_count(); ++v) {
          if (last[v] == 0) accounted += inst.demand(v);
        }
        for (const PriceIndex i : model_tree.edges()) accounted += oracle.demand_through(model_tree, i, p);

        if (!naive.is_zero()) ++s.nonzero;
        if (model_tree.edges().size() >= 2) ++s.multi_edge_trees;
        const bool bad_rev = fast != naive;
        const bool bad_tree = model_tree != contracted;
        const bool bad_part = accounted != total;
        s.revenue_mismatch += bad_rev;
        s.tree_mismatch += bad_tree;
        s.partition_mismatch += bad_part;
        if ((bad_rev || bad_tree || bad_part) && s.first_failure.empty()) {
          std::ostringstream os;
          os << "instance " << c << " prices " << p.to_string() << " fast " << fast << " naive " << naive << " model "
             << model_tree << " contracted " << contracted;
          s.first_failure = os.str();
        }
      }
    }
    s.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return s;
  }();
  return stats;
}

Outcome criterion1() {
  const auto& s = equivalence_run();
  std::ostringstream os;
  os << kC1Instances << " instances x " << kC1Prices << " prices, " << s.trials << " trials, " << s.revenue_mismatch
     << " revenue mismatches, " << s.partition_mismatch << " partition mismatches, " << s.nonzero << " nonzero revenues";
  if (!s.first_failure.empty()) os << "; first failure: " << s.first_failure;
  return {s.revenue_mismatch == 0 && s.partition_mismatch == 0 && s.trials == kC1Instances * kC1Prices, os.str()};
}

Outcome criterion2() {
  const auto& s = equivalence_run();
  std::ostringstream os;
  os << s.trials << " trials, " << s.tree_mismatch << " reduced-tree mismatches, " << s.multi_edge_trees
     << " trials with >= 2 tree edges";
  return {s.tree_mismatch == 0 && s.trials > 0, os.str()};
}

Outcome criterion3() {
  std::uint64_t comparisons = 0, mismatches = 0;
  std::string first;
  for (std::size_t c = 0; c < kC3Instances; ++c) {
    RandomInstanceParams params;
    params.n = 30 + 5 * c;
    params.m = 4 * params.n;
    params.k = static_cast<std::uint32_t>(2 + c % 3);
    params.cost_max = 3;  // small costs make ties common
    params.demand_max = 3;
    params.seed = 9000 + c;
    const Instance base = random_instance(params);
    std::vector<Instance> variants{base};
    Rng perm_rng(c);
    for (std::size_t r = 1; r < kC3Permutations; ++r) {
      std::vector<EdgeId> order(base.edge_count());
      std::iota(order.begin(), order.end(), EdgeId{0});
      shuffle(perm_rng, order);
      variants.push_back(base.with_edge_order(order));
    }
    std::vector<std::unique_ptr<RevenueOracle>> oracles;
    for (const auto& v : variants) oracles.push_back(std::make_unique<RevenueOracle>(v));
    const PriceSampler sampler(base, oracles[0]->distances());
    Rng rng(400 + c);
    for (std::size_t t = 0; t < kC3Prices; ++t) {
      const PriceFunction p = sampler.sample(rng);
      std::optional<ReducedTree> ref_tree;
      std::vector<ExtRational> ref_counts;
      for (std::size_t r = 0; r < variants.size(); ++r) {
        const Instance& inst = variants[r];
        const auto spt = lex_dijkstra(inst, p);
        const ReducedTree full_tree = ref::contract_by_walking(inst, spt.parent_edge);
        const ReducedTree model_tree = oracles[r]->reduced_tree(p);
        const auto last = ref::last_priceable_by_walking(inst, spt.parent_edge);
        std::vector<ExtRational> counts(inst.priceable_count() * 2);
        for (VertexId v = 0; v < inst.vertex_count(); ++v) {
          if (last[v] != 0) counts[last[v] - 1] += inst.demand(v);
        }
        for (PriceIndex i = 1; i <= inst.priceable_count(); ++i) {
          if (model_tree.contains(i)) counts[inst.priceable_count() + i - 1] = oracles[r]->demand_through(model_tree, i, p);
        }
        ++comparisons;
        bool bad = full_tree != model_tree;
        if (!ref_tree) {
          ref_tree = full_tree;
          ref_counts = counts;
        } else {
          bad = bad || full_tree != *ref_tree || counts != ref_counts;
        }
        if (bad) {
          ++mismatches;
          if (first.empty()) first = "instance " + std::to_string(c) + " permutation " + std::to_string(r) + " prices " + p.to_string();
        }
      }
    }
  }
  std::ostringstream os;
  os << kC3Instances << " instances x " << kC3Prices << " prices x " << kC3Permutations << " edge orders, " << comparisons
     << " comparisons, " << mismatches << " mismatches";
  if (!first.empty()) os << "; first: " << first;
  return {mismatches == 0 && comparisons == kC3Instances * kC3Prices * kC3Permutations, os.str()};
}

Outcome criterion4() {
  std::uint64_t checked = 0, mismatches = 0, multi_tree = 0, enumerated = 0;
  std::string first;
  for (std::uint64_t seed = 0; checked < kC4Instances; ++seed) {
    Rng rng(seed);
    RandomInstanceParams params;
    params.n = static_cast<std::size_t>(uniform_int(rng, 3, kC4MaxN));
    const std::size_t max_m = params.n * (params.n - 1);
    params.m = std::min<std::size_t>(max_m, static_cast<std::size_t>(uniform_int(rng, static_cast<std::int64_t>(params.n),
                                                                                 static_cast<std::int64_t>(3 * params.n))));
    params.k = static_cast<std::uint32_t>(uniform_int(rng, 1, 3));
    params.cost_max = 2;
    params.demand_max = 3;
    params.seed = 20000 + seed;
    const Instance inst = random_instance(params);
    const FixedDistances dists(inst);
    const PriceSampler sampler(inst, dists);
    const PriceFunction p = sampler.sample(rng);
    const auto result = ref::max_revenue_over_all_spts(inst, p);
    const ExtRational naive = naive_revenue(inst, p);
    ++checked;
    enumerated += result.trees;
    if (result.trees > 1) ++multi_tree;
    if (result.max_revenue != naive) {
      ++mismatches;
      if (first.empty()) first = "seed " + std::to_string(seed) + " prices " + p.to_string();
    }
  }
  std::ostringstream os;
  os << checked << " instances (n <= " << kC4MaxN << "), " << enumerated << " trees enumerated, " << multi_tree
     << " with several shortest path trees, " << mismatches << " mismatches";
  if (!first.empty()) os << "; first: " << first;
  return {mismatches == 0 && checked >= kC4Instances && multi_tree > 0, os.str()};
}

Outcome criterion5() {
  std::uint64_t queries = 0, mismatches = 0, boundary_hits = 0;
  std::string first;
  for (std::size_t dim = 1; dim <= 4; ++dim) {
    for (const std::size_t n : {std::size_t{1}, std::size_t{100}, std::size_t{2500}, kC5MaxPoints}) {
      Rng rng(dim * 100003 + n);
      const std::int64_t spread = n < 100 ? 4 : 60;
      std::vector<ExtRational> pool;
      for (std::int64_t v = -spread; v <= spread; ++v) pool.push_back(ExtRational::fraction(v, 3));
      pool.push_back(ExtRational::neg_infinity());
      WeightedPointSet points(dim);
      for (std::size_t i = 0; i < n; ++i) {
        std::vector<ExtRational> x(dim);
        for (auto& c : x) c = uniform_below(rng, 25) == 0 ? ExtRational::neg_infinity() : pool[uniform_below(rng, pool.size() - 1)];
        points.add(x, ExtRational::fraction(uniform_int(rng, 0, 20), uniform_int(rng, 1, 4)));
      }
      const RangeTree tree(points);
      std::uint64_t state = dim * 7 + n;
      for (std::size_t q = 0; q < kC5Rects; ++q) {
        const QueryRect rect = ref::random_rect(dim, pool, state);
        const ExtRational expected = ref::linear_scan(points, rect);
        ++queries;
        // Count points sitting on some finite bound of this rectangle.
        if (q % 50 == 0) {
          for (std::size_t i = 0; i < points.size(); ++i) {
            const auto x = points.point(i);
            for (std::size_t a = 0; a < dim; ++a) {
              if ((rect.lower(a) && rect.lower(a)->value == x[a]) || (rect.upper(a) && rect.upper(a)->value == x[a])) {
                ++boundary_hits;
                break;
              }
            }
          }
        }
        if (tree.query_weight(rect) != expected) {
          ++mismatches;
          if (first.empty()) first = "dim " + std::to_string(dim) + " n " + std::to_string(n) + " query " + std::to_string(q);
        }
      }
    }
  }
  std::ostringstream os;
  os << "d in 1..4, n up to " << kC5MaxPoints << ", " << queries << " rectangles, " << boundary_hits
     << " sampled boundary incidences, " << mismatches << " mismatches";
  if (!first.empty()) os << "; first: " << first;
  return {mismatches == 0 && boundary_hits > 0, os.str()};
}

Outcome criterion6() {
  std::uint64_t pairs = 0, violations = 0;
  for (std::uint32_t k = 1; k <= kC6MaxK; ++k) {
    const std::uint32_t subsets = 1u << k;
    std::vector<std::int64_t> value(subsets);
    for (std::uint32_t mask = 0; mask < subsets; ++mask) {
      std::vector<PriceIndex> members;
      for (PriceIndex i = 1; i <= k; ++i) {
        if (mask & (1u << (i - 1))) members.push_back(i);
      }
      value[mask] = chi(std::span<const PriceIndex>(members));
    }
    for (std::uint32_t a = 0; a < subsets; ++a) {
      for (std::uint32_t b = 0; b < subsets; ++b) {
        ++pairs;
        if ((value[a] == value[b]) != (a == b)) ++violations;
      }
    }
  }
  std::ostringstream os;
  os << "k <= " << kC6MaxK << ", " << pairs << " subset pairs, " << violations << " violations";
  return {violations == 0, os.str()};
}

Outcome criterion7() {
  cli::BenchConfig config;
  config.sizes = cli::parse_sizes("2^10,...,2^17");
  config.k = 2;
  config.queries = 200;
  config.m_factor = 4;
  config.seed = 1;
  const auto records = cli::run_bench(config, &std::cerr);
  const auto& small = records.front();
  const auto& large = records.back();
  const double growth = large.fast_us / small.fast_us;
  bool agree = true;
  for (const auto& r : records) agree = agree && r.agree;
  std::ostringstream os;
  os << std::fixed << std::setprecision(2) << "n=" << large.n << ": fast " << large.fast_us << " us, naive " << large.naive_us
     << " us, speedup " << large.speedup() << " (need >= " << kC7MinSpeedup << "); fast growth n=" << small.n << " -> " << large.n
     << ": " << growth << "x (need <= " << kC7MaxFastGrowth << "); fast == naive on all samples: " << (agree ? "yes" : "no");
  return {agree && large.speedup() >= kC7MinSpeedup && growth <= kC7MaxFastGrowth, os.str()};
}

Outcome criterion8() {
  std::uint64_t samples = 0, beaten = 0, sweep_mismatch = 0;
  std::string first;
  for (std::size_t c = 0; c < kC8SingleInstances; ++c) {
    RandomInstanceParams params;
    params.n = 10 + 3 * c;
    params.m = 4 * params.n;
    params.k = 1;
    params.cost_max = 10;
    params.demand_max = 3;
    params.seed = 30000 + c;
    params.fixed_spanning = true;
    const Instance inst = random_instance(params);
    const FixedDistances dists(inst);
    const auto best = solve(inst, heuristic_candidates(inst, dists));
    const PriceSampler sampler(inst, dists);
    ExtRational far(1);
    for (const auto& d : dists.from_root()) far = std::max(far, d);
    const std::int64_t scale = far.numerator() / far.denominator() + 2;
    Rng rng(c);
    for (std::size_t t = 0; t < kC8Samples; ++t) {
      // Half from the breakpoint-aware sampler, half uniform rationals.
      const PriceFunction p = t % 2 == 0
                                  ? sampler.sample(rng)
                                  : PriceFunction({ExtRational::fraction(uniform_int(rng, 1, scale * 12), uniform_int(rng, 1, 12))});
      ++samples;
      if (naive_revenue(inst, p) > best.best_revenue) {
        ++beaten;
        if (first.empty()) first = "k=1 instance " + std::to_string(c) + " sample " + p.to_string();
      }
    }
  }
  for (std::size_t c = 0; c < kC8PairInstances; ++c) {
    RandomInstanceParams params;
    params.n = 6 + c % 5;
    params.m = 3 * params.n;
    params.k = 2;
    params.cost_max = 6;
    params.seed = 40000 + c;
    params.fixed_spanning = true;
    const Instance inst = random_instance(params);
    CandidateSet set = heuristic_candidates(inst);
    ExtRational above(1);
    for (const Edge& e : inst.edges()) {
      if (!e.is_priceable()) above += e.cost;
    }
    for (auto& list : set.per_edge) {
      if (list.empty()) list.push_back(above);
    }
    const auto result = solve(inst, set);
    std::optional<PriceFunction> sweep_best;
    ExtRational sweep_rev;
    for (const auto& a : set.per_edge[0]) {
      for (const auto& b : set.per_edge[1]) {
        const PriceFunction p({a, b});
        const ExtRational r = naive_revenue(inst, p);
        if (!sweep_best || r > sweep_rev) {
          sweep_best = p;
          sweep_rev = r;
        }
      }
    }
    if (result.best_revenue != sweep_rev || result.best_price != *sweep_best) {
      ++sweep_mismatch;
      if (first.empty()) first = "k=2 instance " + std::to_string(c);
    }
  }
  std::ostringstream os;
  os << kC8SingleInstances << " k=1 instances, " << samples << " random samples, " << beaten << " beat the solver; "
     << kC8PairInstances << " k=2 sweeps, " << sweep_mismatch << " mismatches";
  if (!first.empty()) os << "; first: " << first;
  return {beaten == 0 && sweep_mismatch == 0, os.str()};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Outcome()>> criteria{criterion1, criterion2, criterion3, criterion4,
                                                       criterion5, criterion6, criterion7, criterion8};
  std::set<int> selected;
  for (int a = 1; a < argc; ++a) selected.insert(std::atoi(argv[a]));
  int failures = 0;
  for (int c = 1; c <= static_cast<int>(criteria.size()); ++c) {
    if (!selected.empty() && !selected.count(c)) continue;
    const auto start = Clock::now();
    Outcome outcome;
    try {
      outcome = criteria[c - 1]();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    // Criterion 2 reuses the trials of criterion 1, so charge it their time.
    const double charged = c == 2 ? equivalence_run().seconds : seconds;
    const bool in_budget = charged <= kBudget[c];
    const bool pass = outcome.pass && in_budget;
    failures += !pass;
    std::cout << "criterion " << c << ": " << (pass ? "PASS" : "FAIL") << " | " << outcome.detail << " | " << std::fixed
              << std::setprecision(1) << charged << " s (budget " << kBudget[c] << " s)" << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
