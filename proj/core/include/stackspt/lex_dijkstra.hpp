#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "stackspt/digraph.hpp"
#include "stackspt/ext_rational.hpp"
#include "stackspt/instance.hpp"

namespace stackspt {

// Fingerprint of a priceable edge set: 2^i for e_i, 0 for fixed-cost edges.
// Distinct priceable subsets have distinct sums.
[[nodiscard]] constexpr std::int64_t chi(PriceIndex index) noexcept {
  return index == 0 ? 0 : std::int64_t{1} << index;
}
[[nodiscard]] std::int64_t chi(const Edge& edge) noexcept;
[[nodiscard]] std::int64_t chi(std::span<const PriceIndex> indices) noexcept;

// Path weight (length, -price, -fingerprint) compared lexicographically.
// Among equally long paths the one collecting more price wins, then the one
// whose priceable edges have larger indices.
struct CompositeWeight {
  ExtRational length;
  ExtRational neg_price;
  std::int64_t neg_chi = 0;

  [[nodiscard]] static CompositeWeight unreachable() { return {ExtRational::infinity(), ExtRational{}, 0}; }
  [[nodiscard]] bool is_finite() const noexcept { return length.is_finite(); }
  // Total price collected along the path.
  [[nodiscard]] ExtRational price() const { return -neg_price; }

  friend CompositeWeight operator+(const CompositeWeight& a, const CompositeWeight& b) {
    return {a.length + b.length, a.neg_price + b.neg_price, a.neg_chi + b.neg_chi};
  }
  friend bool operator==(const CompositeWeight&, const CompositeWeight&) = default;
  friend std::strong_ordering operator<=>(const CompositeWeight& a, const CompositeWeight& b) {
    if (const auto c = a.length <=> b.length; c != 0) return c;
    if (const auto c = a.neg_price <=> b.neg_price; c != 0) return c;
    return a.neg_chi <=> b.neg_chi;
  }
};

std::ostream& operator<<(std::ostream& os, const CompositeWeight& w);

// (c, 0, 0) for a fixed edge of cost c, (p_i, -p_i, -2^i) for priceable e_i.
[[nodiscard]] CompositeWeight composite_weight(const Edge& edge, const PriceFunction& prices);

inline constexpr std::int32_t kNoEdge = -1;

struct SptResult {
  std::vector<std::int32_t> parent_edge;  // kNoEdge for the source and unreachable vertices
  std::vector<CompositeWeight> dist;      // infinite length when unreachable
  std::vector<VertexId> order;            // reachable vertices in settling order, source first

  [[nodiscard]] bool reachable(VertexId v) const { return dist[v].is_finite(); }
};

// Dijkstra under composite weights on an arbitrary edge list. Edges must have
// nonnegative length; zero-length fixed edges are allowed.
SptResult lex_dijkstra(const Digraph& graph, std::span<const Edge> edges, const PriceFunction& prices, VertexId source);

// Composite-weight shortest path tree of the full instance.
SptResult lex_dijkstra(const Instance& instance, const PriceFunction& prices, VertexId source);
inline SptResult lex_dijkstra(const Instance& instance, const PriceFunction& prices) {
  return lex_dijkstra(instance, prices, instance.root());
}

// Last priceable index on the tree path to each vertex; 0 when the path has none
// or the vertex is unreachable.
std::vector<PriceIndex> last_priceable(const SptResult& tree, std::span<const Edge> edges);

// Shortest distances in the graph without its priceable edges; +inf when unreachable.
std::vector<ExtRational> fixed_cost_sssp(const Instance& instance, VertexId source);

// Revenue of one composite-weight shortest path tree, which equals the
// revenue-maximising choice among all shortest path trees. Throws
// UnreachableDemandError if a vertex with positive demand is unreachable.
ExtRational naive_revenue(const Instance& instance, const PriceFunction& prices);

}  // namespace stackspt
