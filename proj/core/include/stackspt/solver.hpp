#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stackspt/ext_rational.hpp"
#include "stackspt/instance.hpp"
#include "stackspt/model_graph.hpp"
#include "stackspt/random.hpp"
#include "stackspt/revenue_oracle.hpp"

namespace stackspt {

// Finite search space for the leader. The cross product of the per-edge
// lists is searched unless every list is empty and explicit vectors are
// given; an empty list pins its edge to a price above every fixed-cost path.
// Explicit vectors are searched in addition.
struct CandidateSet {
  std::vector<std::vector<ExtRational>> per_edge;  // index i-1 holds candidates for e_i
  std::vector<PriceFunction> vectors;

  // Sorts and deduplicates the per-edge lists; throws ValidationError on a
  // nonpositive or infinite candidate.
  void normalize();
  [[nodiscard]] bool empty() const noexcept;
};

// Lines "cand <i> <price>" and "vector <p1> ... <pk>", '#' comments.
CandidateSet parse_candidates(std::string_view text, std::uint32_t k);
CandidateSet read_candidates_file(const std::string& path, std::uint32_t k);

// Per edge i the breakpoints d(r,v) - d(r,s_i) - d(t_i,v) > 0 over fixed-cost
// distances: the prices at which routing v through e_i ties with its
// priceable-free route. Exact for k = 1, a heuristic otherwise.
CandidateSet heuristic_candidates(const Instance& instance);
CandidateSet heuristic_candidates(const Instance& instance, const FixedDistances& distances);

struct SolveOptions {
  unsigned threads = 1;
};

struct SolveResult {
  PriceFunction best_price;
  ExtRational best_revenue;
  std::uint64_t evaluations = 0;
  std::chrono::nanoseconds wall_time{0};
};

// Evaluates every candidate vector and returns the revenue maximiser, ties
// going to the lexicographically smallest vector. Uses the fast oracle for
// k >= 2 and the direct evaluation for k = 1. Result does not depend on the
// thread count.
SolveResult solve(const Instance& instance, const CandidateSet& candidates, const SolveOptions& options = {});

// Random price vectors mixing breakpoint prices (which produce ties) with
// integer and small-denominator values on the scale of the instance.
class PriceSampler {
 public:
  PriceSampler(const Instance& instance, const FixedDistances& distances);
  PriceFunction sample(Rng& rng) const;

 private:
  std::vector<std::vector<ExtRational>> breakpoints_;
  std::int64_t scale_ = 1;
};

struct TrialRecord {
  std::uint64_t trial = 0;
  PriceFunction prices;
  std::optional<ExtRational> fast;
  std::optional<ExtRational> naive;
  bool tree_match = false;
  bool partition_ok = false;
  std::string error;

  [[nodiscard]] bool passed() const { return fast && naive && *fast == *naive && tree_match && partition_ok && error.empty(); }
};

struct VerifyReport {
  std::uint64_t trials = 0;
  std::uint64_t failures = 0;
  std::vector<TrialRecord> records;
  // Instance text plus the failing price vector of the first failure.
  std::optional<std::string> counterexample;

  [[nodiscard]] bool passed() const noexcept { return failures == 0; }
};

// For each random price vector checks fast == naive revenue, model-graph
// reduced tree == contraction of the full shortest path tree, and that the
// per-edge demands plus the priceable-free demand add up to the total.
VerifyReport verify_oracle(const Instance& instance, std::uint64_t trials, std::uint64_t seed,
                           const OracleOptions& options = {});

std::string trial_csv_header();
std::string trial_csv_row(const TrialRecord& record);

}  // namespace stackspt
