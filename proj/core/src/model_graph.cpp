#include "stackspt/model_graph.hpp"

#include <ostream>
#include <sstream>
#include <stdexcept>

namespace stackspt {

FixedDistances::FixedDistances(const Instance& instance) : from_root_(fixed_cost_sssp(instance, instance.root())) {
  const std::uint32_t k = instance.priceable_count();
  tails_.reserve(k);
  heads_.reserve(k);
  from_head_.reserve(k);
  for (PriceIndex i = 1; i <= k; ++i) {
    tails_.push_back(instance.priceable_tail(i));
    heads_.push_back(instance.priceable_head(i));
    from_head_.push_back(fixed_cost_sssp(instance, heads_.back()));
  }
}

ReducedTree::ReducedTree(std::vector<std::int32_t> parent_of) : parent_of_(std::move(parent_of)) {
  const auto k = static_cast<std::int32_t>(parent_of_.size());
  for (std::int32_t i = 1; i <= k; ++i) {
    std::int32_t at = i;
    std::int32_t steps = 0;
    if (parent_of_[i - 1] == kAbsent) continue;
    while (at != kRoot) {
      const std::int32_t up = parent_of_[at - 1];
      if (up < kRoot || up > k) throw std::invalid_argument("reduced tree parent out of range");
      if (up != kRoot && parent_of_[up - 1] == kAbsent) throw std::invalid_argument("reduced tree parent is absent");
      if (++steps > k) throw std::invalid_argument("reduced tree has a cycle");
      at = up;
    }
  }
}

std::vector<PriceIndex> ReducedTree::edges() const {
  std::vector<PriceIndex> out;
  for (std::size_t i = 0; i < parent_of_.size(); ++i) {
    if (parent_of_[i] != kAbsent) out.push_back(static_cast<PriceIndex>(i + 1));
  }
  return out;
}

bool ReducedTree::empty() const noexcept {
  for (const auto p : parent_of_) {
    if (p != kAbsent) return false;
  }
  return true;
}

std::string ReducedTree::to_string() const {
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (std::size_t i = 0; i < parent_of_.size(); ++i) {
    if (parent_of_[i] == kAbsent) continue;
    if (!first) out << ", ";
    first = false;
    out << 'e' << i + 1 << "<-" << (parent_of_[i] == kRoot ? std::string("r") : "e" + std::to_string(parent_of_[i]));
  }
  out << '}';
  return out.str();
}

std::ostream& operator<<(std::ostream& os, const ReducedTree& tree) { return os << tree.to_string(); }

namespace {

ReducedTree contract(const SptResult& tree, std::span<const Edge> edges, std::uint32_t k,
                     const std::function<EdgeId(PriceIndex)>& edge_of) {
  const auto last = last_priceable(tree, edges);
  std::vector<std::int32_t> parent_of(k, ReducedTree::kAbsent);
  for (PriceIndex i = 1; i <= k; ++i) {
    const EdgeId id = edge_of(i);
    const Edge& e = edges[id];
    if (tree.parent_edge[e.head] == static_cast<std::int32_t>(id)) {
      parent_of[i - 1] = static_cast<std::int32_t>(last[e.tail]);
    }
  }
  return ReducedTree(std::move(parent_of));
}

}  // namespace

ReducedTree contract_tree(const Instance& instance, const SptResult& tree) {
  return contract(tree, instance.edges(), instance.priceable_count(),
                  [&](PriceIndex i) { return instance.priceable_edge(i); });
}

ModelGraph::ModelGraph(const Instance& instance, const FixedDistances& distances) : k_(instance.priceable_count()) {
  auto add_fixed = [&](VertexId from, VertexId to, const ExtRational& length) {
    if (length.is_finite()) edges_.push_back(Edge::fixed(from, to, length));
  };
  for (PriceIndex i = 1; i <= k_; ++i) {
    add_fixed(root_vertex(), tail_vertex(i), distances.from_root(distances.tail(i)));
    add_fixed(root_vertex(), head_vertex(i), distances.from_root(distances.head(i)));
  }
  for (PriceIndex i = 1; i <= k_; ++i) {
    for (PriceIndex j = 1; j <= k_; ++j) {
      if (i == j) continue;
      add_fixed(head_vertex(i), tail_vertex(j), distances.from_head(i, distances.tail(j)));
      add_fixed(head_vertex(i), head_vertex(j), distances.from_head(i, distances.head(j)));
    }
  }
  for (PriceIndex i = 1; i <= k_; ++i) {
    priceable_.push_back(static_cast<EdgeId>(edges_.size()));
    edges_.push_back(Edge::priceable(tail_vertex(i), head_vertex(i), i));
  }
  adjacency_ = Digraph::from_edges(vertex_count(), edges_);
}

ReducedTree ModelGraph::reduced_tree(const PriceFunction& prices) const {
  if (prices.size() != k_) throw std::invalid_argument("price vector length does not match the model graph");
  const SptResult tree = lex_dijkstra(adjacency_, edges_, prices, root_vertex());
  return contract(tree, edges_, k_, [&](PriceIndex i) { return priceable_[i - 1]; });
}

EdgeSequence sequence_of(const ReducedTree& tree, PriceIndex i) {
  EdgeSequence seq;
  if (!tree.contains(i)) return seq;
  for (std::int32_t at = static_cast<std::int32_t>(i); at != ReducedTree::kRoot; at = tree.parent(static_cast<PriceIndex>(at))) {
    seq.push_back(static_cast<PriceIndex>(at));
  }
  return {seq.rbegin(), seq.rend()};
}

ExtRational w_infinity(std::span<const PriceIndex> sequence, const FixedDistances& distances) {
  if (sequence.empty()) throw std::invalid_argument("w_infinity is undefined for the empty sequence");
  ExtRational total = distances.from_root(distances.tail(sequence.front()));
  for (std::size_t j = 0; j + 1 < sequence.size(); ++j) {
    total += distances.from_head(sequence[j], distances.tail(sequence[j + 1]));
  }
  return total;
}

ExtRational sequence_price(std::span<const PriceIndex> sequence, const PriceFunction& prices) {
  ExtRational total;
  for (const PriceIndex i : sequence) total += prices.price(i);
  return total;
}

bool seq_order_lt(std::span<const PriceIndex> a, std::span<const PriceIndex> b, const PriceFunction& prices) {
  const ExtRational pa = sequence_price(a, prices);
  const ExtRational pb = sequence_price(b, prices);
  if (pa != pb) return pa > pb;
  return chi(a) > chi(b);
}

}  // namespace stackspt
