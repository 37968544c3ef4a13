#pragma once

#include <atomic>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

#include "stackspt/ext_rational.hpp"
#include "stackspt/instance.hpp"
#include "stackspt/model_graph.hpp"
#include "stackspt/range_tree.hpp"

namespace stackspt {

struct OracleOptions {
  std::size_t leaf_size = 32;
  // Testing hook: treats every interval end as open, which misclassifies
  // vertices whose competing routes tie. Used to check that the
  // verification harness notices a broken oracle.
  bool inject_fault = false;
};

// Preprocessed instance answering revenue queries in polylogarithmic time.
//
// A query computes the reduced tree R of the price vector on the model
// graph, then for every e_i in R asks the range tree DS(R, e_i) for the
// demand of the vertices whose last priceable edge is e_i, and combines
// revenue = sum_i price(sigma(e_i, R)) * demand(V(e_i)).
//
// DS(R, e_i) is built on first use and kept. Queries may run concurrently;
// concurrent first uses of the same key build it exactly once.
class RevenueOracle {
 public:
  explicit RevenueOracle(Instance instance, OracleOptions options = {});
  ~RevenueOracle();

  RevenueOracle(const RevenueOracle&) = delete;
  RevenueOracle& operator=(const RevenueOracle&) = delete;

  [[nodiscard]] const Instance& instance() const noexcept { return instance_; }
  [[nodiscard]] const FixedDistances& distances() const noexcept { return distances_; }
  [[nodiscard]] const ModelGraph& model_graph() const noexcept { return model_; }

  [[nodiscard]] ReducedTree reduced_tree(const PriceFunction& prices) const { return model_.reduced_tree(prices); }

  // Points of DS(R, e_i): one per vertex v reachable from t_i without
  // priceable edges, one axis per edge of R in increasing index order.
  // Throws std::invalid_argument if e_i is not in R or R is not realisable.
  [[nodiscard]] WeightedPointSet embed_points(const ReducedTree& tree, PriceIndex i) const;

  // Dominance rectangle selecting V(e_i, p) among the embedded points.
  [[nodiscard]] QueryRect query_intervals(const ReducedTree& tree, PriceIndex i, const PriceFunction& prices) const;

  // Demand of the vertices whose tree path ends its priceable part with e_i.
  [[nodiscard]] ExtRational demand_through(const ReducedTree& tree, PriceIndex i, const PriceFunction& prices) const;

  // Throws UnreachableDemandError when a positive-demand vertex cannot be
  // reached from the root at all.
  [[nodiscard]] ExtRational revenue(const PriceFunction& prices) const;

  // Builds the structures of the given reduced trees ahead of queries.
  void warm_up(std::span<const ReducedTree> trees) const;

  [[nodiscard]] std::size_t structures_built() const noexcept { return built_.load(); }

 private:
  struct Slot {
    std::once_flag once;
    std::unique_ptr<RangeTree> tree;
  };
  struct Key {
    ReducedTree tree;
    PriceIndex edge;
    friend auto operator<=>(const Key&, const Key&) = default;
  };

  const RangeTree& structure(const ReducedTree& tree, PriceIndex i) const;

  Instance instance_;
  OracleOptions options_;
  FixedDistances distances_;
  ModelGraph model_;
  std::optional<VertexId> unreachable_demand_;

  mutable std::mutex memo_mutex_;
  mutable std::map<Key, std::shared_ptr<Slot>> memo_;
  mutable std::atomic<std::size_t> built_{0};
};

}  // namespace stackspt
