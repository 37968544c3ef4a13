#include "stackspt/lex_dijkstra.hpp"

#include <ostream>
#include <queue>

#include "stackspt/errors.hpp"

namespace stackspt {

std::int64_t chi(const Edge& edge) noexcept { return chi(edge.price_index); }

std::int64_t chi(std::span<const PriceIndex> indices) noexcept {
  std::int64_t sum = 0;
  for (const PriceIndex i : indices) sum += chi(i);
  return sum;
}

std::ostream& operator<<(std::ostream& os, const CompositeWeight& w) {
  return os << '(' << w.length << ", " << w.neg_price << ", " << w.neg_chi << ')';
}

CompositeWeight composite_weight(const Edge& edge, const PriceFunction& prices) {
  if (!edge.is_priceable()) return {edge.cost, ExtRational{}, 0};
  const ExtRational& p = prices.price(edge.price_index);
  return {p, -p, -chi(edge.price_index)};
}

SptResult lex_dijkstra(const Digraph& graph, std::span<const Edge> edges, const PriceFunction& prices, VertexId source) {
  const std::size_t n = graph.vertex_count();
  SptResult out;
  out.parent_edge.assign(n, kNoEdge);
  out.dist.assign(n, CompositeWeight::unreachable());
  out.order.reserve(n);

  // Per-edge weights are computed once per call.
  std::vector<CompositeWeight> weight;
  weight.reserve(edges.size());
  for (const Edge& e : edges) weight.push_back(composite_weight(e, prices));

  struct Entry {
    CompositeWeight key;
    VertexId vertex;
    bool operator>(const Entry& other) const { return key > other.key; }
  };
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  std::vector<bool> settled(n, false);

  out.dist[source] = CompositeWeight{};
  heap.push({out.dist[source], source});
  while (!heap.empty()) {
    const Entry top = heap.top();
    heap.pop();
    if (settled[top.vertex]) continue;
    settled[top.vertex] = true;
    out.order.push_back(top.vertex);
    for (const Arc& arc : graph.out_arcs(top.vertex)) {
      if (settled[arc.head]) continue;
      CompositeWeight cand = top.key + weight[arc.edge];
      if (cand < out.dist[arc.head]) {
        out.dist[arc.head] = cand;
        out.parent_edge[arc.head] = static_cast<std::int32_t>(arc.edge);
        heap.push({std::move(cand), arc.head});
      }
    }
  }
  return out;
}

SptResult lex_dijkstra(const Instance& instance, const PriceFunction& prices, VertexId source) {
  check_prices(instance, prices);
  return lex_dijkstra(instance.adjacency(), instance.edges(), prices, source);
}

std::vector<PriceIndex> last_priceable(const SptResult& tree, std::span<const Edge> edges) {
  std::vector<PriceIndex> last(tree.dist.size(), 0);
  for (const VertexId v : tree.order) {
    const std::int32_t pe = tree.parent_edge[v];
    if (pe == kNoEdge) continue;
    const Edge& e = edges[static_cast<std::size_t>(pe)];
    last[v] = e.is_priceable() ? e.price_index : last[e.tail];
  }
  return last;
}

std::vector<ExtRational> fixed_cost_sssp(const Instance& instance, VertexId source) {
  const std::size_t n = instance.vertex_count();
  std::vector<ExtRational> dist(n, ExtRational::infinity());
  std::vector<bool> settled(n, false);
  using Entry = std::pair<ExtRational, VertexId>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  dist.at(source) = 0;
  heap.emplace(ExtRational{}, source);
  const auto edges = instance.edges();
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (settled[u]) continue;
    settled[u] = true;
    for (const Arc& arc : instance.adjacency().out_arcs(u)) {
      const Edge& e = edges[arc.edge];
      if (e.is_priceable() || settled[arc.head]) continue;
      const ExtRational cand = d + e.cost;
      if (cand < dist[arc.head]) {
        dist[arc.head] = cand;
        heap.emplace(cand, arc.head);
      }
    }
  }
  return dist;
}

ExtRational naive_revenue(const Instance& instance, const PriceFunction& prices) {
  const SptResult tree = lex_dijkstra(instance, prices);
  ExtRational revenue;
  for (VertexId v = 0; v < instance.vertex_count(); ++v) {
    const ExtRational& phi = instance.demand(v);
    if (phi.is_zero()) continue;
    if (!tree.reachable(v)) throw UnreachableDemandError(v);
    revenue += phi * tree.dist[v].price();
  }
  return revenue;
}

}  // namespace stackspt
