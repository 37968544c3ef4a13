#include "stackspt/solver.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "stackspt/errors.hpp"
#include "stackspt/lex_dijkstra.hpp"

namespace stackspt {

void CandidateSet::normalize() {
  for (std::size_t i = 0; i < per_edge.size(); ++i) {
    auto& list = per_edge[i];
    for (const auto& c : list) {
      if (!c.is_finite() || c <= 0) {
        throw ValidationError("candidate", "candidate " + c.to_string() + " for edge " + std::to_string(i + 1) + " must be finite and > 0");
      }
    }
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
}

bool CandidateSet::empty() const noexcept {
  if (!vectors.empty()) return false;
  return std::all_of(per_edge.begin(), per_edge.end(), [](const auto& list) { return list.empty(); });
}

CandidateSet parse_candidates(std::string_view text, std::uint32_t k) {
  CandidateSet set;
  set.per_edge.resize(k);
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    ++line_no;
    const auto eol = std::min(text.find('\n', pos), text.size());
    std::string line(text.substr(pos, eol - pos));
    pos = eol + 1;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream in(line);
    std::vector<std::string> tok;
    for (std::string t; in >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    try {
      if (tok[0] == "cand") {
        if (tok.size() != 3) throw ParseError(line_no, "expected 'cand <i> <price>'");
        if (tok[1].find_first_not_of("0123456789") != std::string::npos) throw ParseError(line_no, "bad edge index '" + tok[1] + "'");
        const auto i = std::stoul(tok[1]);
        if (i == 0 || i > k) throw ValidationError("index", "candidate edge index on line " + std::to_string(line_no) + " not in 1.." + std::to_string(k));
        set.per_edge[i - 1].push_back(ExtRational::parse(tok[2]));
      } else if (tok[0] == "vector") {
        if (tok.size() != k + 1) throw ParseError(line_no, "expected 'vector' followed by " + std::to_string(k) + " prices");
        std::vector<ExtRational> prices;
        for (std::size_t j = 1; j < tok.size(); ++j) prices.push_back(ExtRational::parse(tok[j]));
        set.vectors.emplace_back(std::move(prices));
      } else {
        throw ParseError(line_no, "unknown directive '" + tok[0] + "'");
      }
    } catch (const std::out_of_range&) {
      throw ParseError(line_no, "number out of range");
    } catch (const std::overflow_error& e) {
      throw ParseError(line_no, e.what());
    } catch (const ValidationError&) {
      throw;
    } catch (const std::invalid_argument& e) {
      throw ParseError(line_no, e.what());
    }
  }
  set.normalize();
  return set;
}

CandidateSet read_candidates_file(const std::string& path, std::uint32_t k) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_candidates(buffer.str(), k);
}

CandidateSet heuristic_candidates(const Instance& instance, const FixedDistances& distances) {
  CandidateSet set;
  set.per_edge.resize(instance.priceable_count());
  for (PriceIndex i = 1; i <= instance.priceable_count(); ++i) {
    const ExtRational& to_tail = distances.from_root(distances.tail(i));
    if (!to_tail.is_finite()) continue;
    for (VertexId v = 0; v < instance.vertex_count(); ++v) {
      const ExtRational& direct = distances.from_root(v);
      const ExtRational& after = distances.from_head(i, v);
      if (!direct.is_finite() || !after.is_finite()) continue;
      const ExtRational breakpoint = direct - to_tail - after;
      if (breakpoint > 0) set.per_edge[i - 1].push_back(breakpoint);
    }
  }
  set.normalize();
  return set;
}

CandidateSet heuristic_candidates(const Instance& instance) {
  return heuristic_candidates(instance, FixedDistances(instance));
}

namespace {

struct Best {
  std::optional<PriceFunction> prices;
  ExtRational revenue;

  void offer(const PriceFunction& p, const ExtRational& r) {
    if (!prices || r > revenue || (r == revenue && p < *prices)) {
      prices = p;
      revenue = r;
    }
  }
};

// Cross-product enumeration in lexicographic order, first edge most significant.
class CandidateSpace {
 public:
  CandidateSpace(const Instance& instance, const CandidateSet& set) : vectors_(set.vectors) {
    const std::uint32_t k = instance.priceable_count();
    if (set.per_edge.size() != k) throw std::invalid_argument("candidate set has the wrong number of edges");
    for (const auto& v : vectors_) check_prices(instance, v);
    const bool any = std::any_of(set.per_edge.begin(), set.per_edge.end(), [](const auto& l) { return !l.empty(); });
    if (!any && !vectors_.empty()) return;
    ExtRational above_all(1);
    for (const Edge& e : instance.edges()) {
      if (!e.is_priceable()) above_all += e.cost;
    }
    cross_size_ = 1;
    for (const auto& list : set.per_edge) {
      lists_.push_back(list.empty() ? std::vector<ExtRational>{above_all} : list);
      if (cross_size_ > (std::uint64_t{1} << 48) / lists_.back().size()) throw std::invalid_argument("candidate cross product is too large");
      cross_size_ *= lists_.back().size();
    }
  }

  [[nodiscard]] std::uint64_t size() const noexcept { return cross_size_ + vectors_.size(); }
  [[nodiscard]] const std::vector<std::vector<ExtRational>>& lists() const noexcept { return lists_; }

  [[nodiscard]] PriceFunction at(std::uint64_t index) const {
    if (index >= cross_size_) return vectors_[index - cross_size_];
    std::vector<ExtRational> prices(lists_.size());
    for (std::size_t j = lists_.size(); j-- > 0;) {
      prices[j] = lists_[j][index % lists_[j].size()];
      index /= lists_[j].size();
    }
    return PriceFunction(std::move(prices));
  }

 private:
  std::vector<std::vector<ExtRational>> lists_;
  std::vector<PriceFunction> vectors_;
  std::uint64_t cross_size_ = 0;
};

int magnitude_bucket(const ExtRational& value) {
  const double d = value.to_double();
  int bucket = 0;
  std::frexp(d, &bucket);
  return bucket;
}

}  // namespace

SolveResult solve(const Instance& instance, const CandidateSet& candidates, const SolveOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const CandidateSpace space(instance, candidates);
  const std::uint64_t total = space.size();
  if (total == 0) throw std::invalid_argument("candidate space is empty");

  std::unique_ptr<RevenueOracle> oracle;
  if (instance.priceable_count() >= 2) oracle = std::make_unique<RevenueOracle>(instance);
  auto evaluate = [&](const PriceFunction& p) { return oracle ? oracle->revenue(p) : naive_revenue(instance, p); };

  const unsigned threads = static_cast<unsigned>(std::clamp<std::uint64_t>(options.threads, 1, total));
  if (oracle && threads > 1 && !space.lists().empty()) {
    // Build the structures for one candidate per edge and magnitude bucket
    // up front, so workers mostly hit materialised structures.
    std::set<ReducedTree> trees;
    const auto& lists = space.lists();
    for (std::size_t i = 0; i < lists.size(); ++i) {
      std::set<int> seen;
      for (const auto& c : lists[i]) {
        if (!seen.insert(magnitude_bucket(c)).second) continue;
        std::vector<ExtRational> prices;
        for (std::size_t j = 0; j < lists.size(); ++j) prices.push_back(j == i ? c : lists[j].front());
        trees.insert(oracle->reduced_tree(PriceFunction(std::move(prices))));
      }
    }
    const std::vector<ReducedTree> warm(trees.begin(), trees.end());
    oracle->warm_up(warm);
  }

  std::vector<Best> partial(threads);
  std::vector<std::exception_ptr> errors(threads);
  auto work = [&](unsigned t) {
    try {
      const std::uint64_t begin = total * t / threads;
      const std::uint64_t end = total * (t + 1) / threads;
      for (std::uint64_t idx = begin; idx < end; ++idx) {
        const PriceFunction p = space.at(idx);
        partial[t].offer(p, evaluate(p));
      }
    } catch (...) {
      errors[t] = std::current_exception();
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  Best best;
  for (const auto& b : partial) {
    if (b.prices) best.offer(*b.prices, b.revenue);
  }
  SolveResult result{*best.prices, best.revenue, total, {}};
  result.wall_time = std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start);
  return result;
}

PriceSampler::PriceSampler(const Instance& instance, const FixedDistances& distances)
    : breakpoints_(heuristic_candidates(instance, distances).per_edge) {
  ExtRational far(1);
  for (const auto& d : distances.from_root()) {
    if (d.is_finite() && d > far) far = d;
  }
  scale_ = far.numerator() / far.denominator() + 1;
}

PriceFunction PriceSampler::sample(Rng& rng) const {
  std::vector<ExtRational> prices;
  prices.reserve(breakpoints_.size());
  for (const auto& points : breakpoints_) {
    const auto mode = uniform_below(rng, 4);
    if (mode < 2 && !points.empty()) {
      prices.push_back(points[uniform_below(rng, points.size())]);
    } else if (mode == 3) {
      const std::int64_t den = uniform_int(rng, 2, 3);
      prices.push_back(ExtRational::fraction(uniform_int(rng, 1, scale_ * den), den));
    } else {
      prices.emplace_back(uniform_int(rng, 1, scale_));
    }
  }
  return PriceFunction(std::move(prices));
}

VerifyReport verify_oracle(const Instance& instance, std::uint64_t trials, std::uint64_t seed, const OracleOptions& options) {
  VerifyReport report;
  report.trials = trials;
  const RevenueOracle oracle(instance, options);
  const PriceSampler sampler(instance, oracle.distances());
  ExtRational total_demand;
  for (const auto& d : instance.demand()) total_demand += d;

  Rng rng(seed);
  for (std::uint64_t t = 0; t < trials; ++t) {
    TrialRecord rec;
    rec.trial = t;
    rec.prices = sampler.sample(rng);
    try {
      rec.fast = oracle.revenue(rec.prices);
      rec.naive = naive_revenue(instance, rec.prices);

      const SptResult full = lex_dijkstra(instance, rec.prices);
      const ReducedTree model_tree = oracle.reduced_tree(rec.prices);
      rec.tree_match = contract_tree(instance, full) == model_tree;

      const auto last = last_priceable(full, instance.edges());
      ExtRational accounted;
      for (VertexId v = 0; v < instance.vertex_count(); ++v) {
        if (last[v] == 0) accounted += instance.demand(v);
      }
      for (const PriceIndex i : model_tree.edges()) accounted += oracle.demand_through(model_tree, i, rec.prices);
      rec.partition_ok = accounted == total_demand;
    } catch (const std::exception& e) {
      rec.error = e.what();
    }
    if (!rec.passed()) {
      ++report.failures;
      if (!report.counterexample) {
        report.counterexample = serialize_instance(instance) + "# prices: " + rec.prices.to_string() + "\n";
      }
    }
    report.records.push_back(std::move(rec));
  }
  return report;
}

std::string trial_csv_header() { return "trial,prices,fast,naive,tree_match,partition_ok,status"; }

std::string trial_csv_row(const TrialRecord& r) {
  std::ostringstream out;
  out << r.trial << ",\"" << r.prices.to_string() << "\"," << (r.fast ? r.fast->to_string() : "") << ','
      << (r.naive ? r.naive->to_string() : "") << ',' << (r.tree_match ? 1 : 0) << ',' << (r.partition_ok ? 1 : 0) << ','
      << (r.passed() ? "pass" : "fail");
  return out.str();
}

}  // namespace stackspt
