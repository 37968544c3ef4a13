#include "stackspt/revenue_oracle.hpp"

#include <stdexcept>

#include "stackspt/errors.hpp"

namespace stackspt {
namespace {

std::optional<VertexId> find_unreachable_demand(const Instance& instance) {
  std::vector<bool> seen(instance.vertex_count(), false);
  std::vector<VertexId> stack{instance.root()};
  seen[instance.root()] = true;
  while (!stack.empty()) {
    const VertexId u = stack.back();
    stack.pop_back();
    for (const Arc& arc : instance.adjacency().out_arcs(u)) {
      if (!seen[arc.head]) {
        seen[arc.head] = true;
        stack.push_back(arc.head);
      }
    }
  }
  for (VertexId v = 0; v < instance.vertex_count(); ++v) {
    if (!seen[v] && !instance.demand(v).is_zero()) return v;
  }
  return std::nullopt;
}

}  // namespace

RevenueOracle::RevenueOracle(Instance instance, OracleOptions options)
    : instance_(std::move(instance)),
      options_(options),
      distances_(instance_),
      model_(instance_, distances_),
      unreachable_demand_(find_unreachable_demand(instance_)) {}

RevenueOracle::~RevenueOracle() = default;

WeightedPointSet RevenueOracle::embed_points(const ReducedTree& tree, PriceIndex i) const {
  if (!tree.contains(i)) throw std::invalid_argument("edge is not part of the reduced tree");
  const auto axes = tree.edges();
  std::vector<ExtRational> gap(axes.size());
  std::size_t own_axis = 0;
  for (std::size_t a = 0; a < axes.size(); ++a) {
    gap[a] = w_infinity(sequence_of(tree, axes[a]), distances_);
    if (!gap[a].is_finite()) throw std::invalid_argument("reduced tree " + tree.to_string() + " is not realisable");
    if (axes[a] == i) own_axis = a;
  }

  WeightedPointSet points(axes.size());
  std::vector<ExtRational> coord(axes.size());
  const auto from_own = distances_.from_head(i);
  for (VertexId v = 0; v < instance_.vertex_count(); ++v) {
    if (!from_own[v].is_finite()) continue;
    const ExtRational via_own = gap[own_axis] + from_own[v];
    for (std::size_t a = 0; a < axes.size(); ++a) {
      const ExtRational& other = a == own_axis ? distances_.from_root(v) : distances_.from_head(axes[a], v);
      if (!other.is_finite()) {
        coord[a] = ExtRational::neg_infinity();
      } else if (a == own_axis) {
        coord[a] = via_own - other;
      } else {
        coord[a] = via_own - gap[a] - other;
      }
    }
    points.add(coord, instance_.demand(v));
  }
  return points;
}

QueryRect RevenueOracle::query_intervals(const ReducedTree& tree, PriceIndex i, const PriceFunction& prices) const {
  if (!tree.contains(i)) throw std::invalid_argument("edge is not part of the reduced tree");
  const auto axes = tree.edges();
  const EdgeSequence own = sequence_of(tree, i);
  const ExtRational own_price = sequence_price(own, prices);
  QueryRect rect(axes.size());
  for (std::size_t a = 0; a < axes.size(); ++a) {
    if (axes[a] == i) {
      rect.set_upper(a, -own_price, !options_.inject_fault);
      continue;
    }
    const EdgeSequence other = sequence_of(tree, axes[a]);
    const bool closed = seq_order_lt(own, other, prices) && !options_.inject_fault;
    rect.set_upper(a, sequence_price(other, prices) - own_price, closed);
  }
  return rect;
}

const RangeTree& RevenueOracle::structure(const ReducedTree& tree, PriceIndex i) const {
  std::shared_ptr<Slot> slot;
  {
    const std::lock_guard lock(memo_mutex_);
    auto& entry = memo_[Key{tree, i}];
    if (!entry) entry = std::make_shared<Slot>();
    slot = entry;
  }
  std::call_once(slot->once, [&] {
    slot->tree = std::make_unique<RangeTree>(embed_points(tree, i), options_.leaf_size);
    built_.fetch_add(1);
  });
  return *slot->tree;
}

ExtRational RevenueOracle::demand_through(const ReducedTree& tree, PriceIndex i, const PriceFunction& prices) const {
  return structure(tree, i).query_weight(query_intervals(tree, i, prices));
}

ExtRational RevenueOracle::revenue(const PriceFunction& prices) const {
  check_prices(instance_, prices);
  if (unreachable_demand_) throw UnreachableDemandError(*unreachable_demand_);
  const ReducedTree tree = reduced_tree(prices);
  ExtRational total;
  for (const PriceIndex i : tree.edges()) {
    const ExtRational served = demand_through(tree, i, prices);
    if (!served.is_zero()) total += sequence_price(sequence_of(tree, i), prices) * served;
  }
  return total;
}

void RevenueOracle::warm_up(std::span<const ReducedTree> trees) const {
  for (const ReducedTree& tree : trees) {
    for (const PriceIndex i : tree.edges()) static_cast<void>(structure(tree, i));
  }
}

}  // namespace stackspt
