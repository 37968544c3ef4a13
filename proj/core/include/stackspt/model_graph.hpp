#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "stackspt/digraph.hpp"
#include "stackspt/ext_rational.hpp"
#include "stackspt/instance.hpp"
#include "stackspt/lex_dijkstra.hpp"

namespace stackspt {

// Fixed-cost distances from the root and from the head t_i of every
// priceable edge, computed on the graph with all priceable edges removed.
class FixedDistances {
 public:
  explicit FixedDistances(const Instance& instance);

  [[nodiscard]] std::uint32_t priceable_count() const noexcept { return static_cast<std::uint32_t>(from_head_.size()); }
  [[nodiscard]] VertexId tail(PriceIndex i) const { return tails_.at(i - 1); }
  [[nodiscard]] VertexId head(PriceIndex i) const { return heads_.at(i - 1); }

  [[nodiscard]] const ExtRational& from_root(VertexId v) const { return from_root_[v]; }
  [[nodiscard]] const ExtRational& from_head(PriceIndex i, VertexId v) const { return from_head_[i - 1][v]; }
  [[nodiscard]] std::span<const ExtRational> from_root() const noexcept { return from_root_; }
  [[nodiscard]] std::span<const ExtRational> from_head(PriceIndex i) const { return from_head_.at(i - 1); }

 private:
  std::vector<VertexId> tails_;
  std::vector<VertexId> heads_;
  std::vector<ExtRational> from_root_;
  std::vector<std::vector<ExtRational>> from_head_;
};

// Rooted tree over priceable edge labels, obtained from a shortest path
// tree by contracting its fixed-cost edges. parent_of[i-1] is kAbsent when
// e_i is not in the tree, kRoot when no priceable edge precedes e_i, or the
// index of the priceable edge directly above e_i.
class ReducedTree {
 public:
  static constexpr std::int32_t kAbsent = -1;
  static constexpr std::int32_t kRoot = 0;

  ReducedTree() = default;
  explicit ReducedTree(std::vector<std::int32_t> parent_of);

  [[nodiscard]] std::uint32_t priceable_count() const noexcept { return static_cast<std::uint32_t>(parent_of_.size()); }
  [[nodiscard]] bool contains(PriceIndex i) const { return parent_of_.at(i - 1) != kAbsent; }
  [[nodiscard]] std::int32_t parent(PriceIndex i) const { return parent_of_.at(i - 1); }
  [[nodiscard]] std::span<const std::int32_t> parent_of() const noexcept { return parent_of_; }
  // Present edges in increasing index order; this is also the axis order of
  // the per-edge point embeddings.
  [[nodiscard]] std::vector<PriceIndex> edges() const;
  [[nodiscard]] bool empty() const noexcept;

  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const ReducedTree&, const ReducedTree&) = default;
  friend auto operator<=>(const ReducedTree& a, const ReducedTree& b) { return a.parent_of_ <=> b.parent_of_; }

 private:
  std::vector<std::int32_t> parent_of_;
};

std::ostream& operator<<(std::ostream& os, const ReducedTree& tree);

// Priceable edges on a root-to-e_i path of a reduced tree, e_i last.
using EdgeSequence = std::vector<PriceIndex>;

// Contracts the fixed-cost edges of a shortest path tree of the full instance.
ReducedTree contract_tree(const Instance& instance, const SptResult& tree);

// The model graph: vertices r, s_1, t_1, ..., s_k, t_k kept as distinct
// logical vertices even when they coincide in the instance. Fixed edges
// r -> x, t_i -> s_j and t_i -> t_j (i != j) carry fixed-cost distances;
// edges of infinite length are left out. The priceable edges s_i -> t_i keep
// their labels.
class ModelGraph {
 public:
  ModelGraph(const Instance& instance, const FixedDistances& distances);

  static constexpr VertexId root_vertex() noexcept { return 0; }
  static constexpr VertexId tail_vertex(PriceIndex i) noexcept { return 2 * i - 1; }
  static constexpr VertexId head_vertex(PriceIndex i) noexcept { return 2 * i; }

  [[nodiscard]] std::uint32_t priceable_count() const noexcept { return k_; }
  [[nodiscard]] std::size_t vertex_count() const noexcept { return 2 * std::size_t{k_} + 1; }
  [[nodiscard]] std::span<const Edge> edges() const noexcept { return edges_; }
  [[nodiscard]] const Digraph& adjacency() const noexcept { return adjacency_; }

  // Reduced tree of a composite-weight shortest path tree of the model graph;
  // it coincides with the reduced tree of the full instance.
  [[nodiscard]] ReducedTree reduced_tree(const PriceFunction& prices) const;

 private:
  std::uint32_t k_;
  std::vector<Edge> edges_;
  std::vector<EdgeId> priceable_;
  Digraph adjacency_;
};

// Root-to-e_i label path in the tree; empty when e_i is absent.
EdgeSequence sequence_of(const ReducedTree& tree, PriceIndex i);

// d(r, s_{i1}) + sum_j d(t_{ij}, s_{ij+1}) over fixed-cost distances.
// Throws std::invalid_argument for the empty sequence.
ExtRational w_infinity(std::span<const PriceIndex> sequence, const FixedDistances& distances);

ExtRational sequence_price(std::span<const PriceIndex> sequence, const PriceFunction& prices);

// a precedes b iff a collects more price, or the same price with a larger
// fingerprint. Total on distinct sequences.
bool seq_order_lt(std::span<const PriceIndex> a, std::span<const PriceIndex> b, const PriceFunction& prices);

}  // namespace stackspt

template <>
struct std::hash<stackspt::ReducedTree> {
  std::size_t operator()(const stackspt::ReducedTree& t) const noexcept {
    std::size_t h = 0xcbf29ce484222325ull;
    for (const auto p : t.parent_of()) h = (h ^ static_cast<std::size_t>(p + 2)) * 0x100000001b3ull;
    return h;
  }
};
