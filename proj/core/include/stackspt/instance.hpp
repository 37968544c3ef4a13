#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stackspt/digraph.hpp"
#include "stackspt/ext_rational.hpp"

namespace stackspt {

// Priceable edges are numbered 1..k; index 0 marks a fixed-cost edge.
using PriceIndex = std::uint32_t;

// Hard limit from the 64-bit tie-break fingerprint (2^i for i <= k).
inline constexpr std::uint32_t kPriceableHardLimit = 61;
inline constexpr std::uint32_t kDefaultPriceableCap = 16;

struct Edge {
  VertexId tail = 0;
  VertexId head = 0;
  ExtRational cost;  // fixed cost; zero for priceable edges
  PriceIndex price_index = 0;

  static Edge fixed(VertexId tail, VertexId head, ExtRational cost) { return {tail, head, cost, 0}; }
  static Edge priceable(VertexId tail, VertexId head, PriceIndex index) { return {tail, head, ExtRational{}, index}; }

  [[nodiscard]] bool is_priceable() const noexcept { return price_index != 0; }

  friend bool operator==(const Edge&, const Edge&) = default;
};

// A validated pricing instance: directed graph, root, per-vertex demand and
// the split of the edges into fixed-cost and priceable ones. Immutable.
class Instance {
 public:
  // Validates every invariant and throws ValidationError on violation.
  // Demand may be empty (every vertex gets demand 1) or have one entry per vertex.
  Instance(std::size_t vertex_count, VertexId root, std::vector<Edge> edges, std::vector<ExtRational> demand = {});

  [[nodiscard]] std::size_t vertex_count() const noexcept { return vertex_count_; }
  [[nodiscard]] std::size_t edge_count() const noexcept { return edges_.size(); }
  [[nodiscard]] std::uint32_t priceable_count() const noexcept { return static_cast<std::uint32_t>(priceable_.size()); }
  [[nodiscard]] VertexId root() const noexcept { return root_; }

  [[nodiscard]] std::span<const Edge> edges() const noexcept { return edges_; }
  [[nodiscard]] const Edge& edge(EdgeId id) const { return edges_.at(id); }
  [[nodiscard]] std::span<const ExtRational> demand() const noexcept { return demand_; }
  [[nodiscard]] const ExtRational& demand(VertexId v) const { return demand_.at(v); }

  // Edge id, tail and head of priceable edge i (1-based).
  [[nodiscard]] EdgeId priceable_edge(PriceIndex i) const { return priceable_.at(i - 1); }
  [[nodiscard]] VertexId priceable_tail(PriceIndex i) const { return edges_[priceable_edge(i)].tail; }
  [[nodiscard]] VertexId priceable_head(PriceIndex i) const { return edges_[priceable_edge(i)].head; }

  [[nodiscard]] const Digraph& adjacency() const noexcept { return adjacency_; }

  // Same instance with the edge list reordered; priceable labels are kept.
  [[nodiscard]] Instance with_edge_order(std::span<const EdgeId> order) const;

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.vertex_count_ == b.vertex_count_ && a.root_ == b.root_ && a.edges_ == b.edges_ && a.demand_ == b.demand_;
  }

 private:
  std::size_t vertex_count_;
  VertexId root_;
  std::vector<Edge> edges_;
  std::vector<ExtRational> demand_;
  std::vector<EdgeId> priceable_;
  Digraph adjacency_;
};

// Strictly positive finite price per priceable edge. Fixed-cost edges have
// an implicit price of zero, which is not stored.
class PriceFunction {
 public:
  PriceFunction() = default;
  explicit PriceFunction(std::vector<ExtRational> prices);

  // Parses a comma separated list such as "2,5/2,0.75".
  static PriceFunction parse(std::string_view text);

  [[nodiscard]] std::uint32_t size() const noexcept { return static_cast<std::uint32_t>(prices_.size()); }
  [[nodiscard]] const ExtRational& price(PriceIndex i) const { return prices_.at(i - 1); }
  [[nodiscard]] std::span<const ExtRational> values() const noexcept { return prices_; }

  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const PriceFunction&, const PriceFunction&) = default;
  friend auto operator<=>(const PriceFunction& a, const PriceFunction& b) { return a.prices_ <=> b.prices_; }

 private:
  std::vector<ExtRational> prices_;
};

// Throws ValidationError if the price vector does not fit the instance.
void check_prices(const Instance& instance, const PriceFunction& prices);

struct ParseOptions {
  std::uint32_t max_priceable = kDefaultPriceableCap;
};

// Text format, one directive per line, '#' starts a comment:
//   stackspt 1
//   graph <n> <m> <k>
//   root <r>
//   demand <v> <phi>            (optional; unlisted vertices have demand 1)
//   edge <u> <v> F <cost> | edge <u> <v> P <i>
Instance parse_instance(std::string_view text, const ParseOptions& options = {});
Instance read_instance_file(const std::string& path, const ParseOptions& options = {});
std::string serialize_instance(const Instance& instance);

struct RandomInstanceParams {
  std::size_t n = 10;
  std::size_t m = 25;
  std::uint32_t k = 2;
  std::int64_t cost_min = 1;
  std::int64_t cost_max = 10;
  std::int64_t demand_min = 1;
  std::int64_t demand_max = 1;
  std::uint64_t seed = 0;
  // Keep the random spanning arborescence fixed-cost, so every vertex is
  // reachable from the root without priceable edges.
  bool fixed_spanning = false;
};

// Deterministic for a fixed parameter set. Throws std::invalid_argument on
// infeasible parameters.
Instance random_instance(const RandomInstanceParams& params);

}  // namespace stackspt
