#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace stackspt {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

struct Arc {
  VertexId head;
  EdgeId edge;
};

// Compressed out-adjacency. Arcs of a vertex keep the relative order of the
// edge list they were built from.
class Digraph {
 public:
  Digraph() = default;

  template <typename EdgeRange>
  static Digraph from_edges(std::size_t vertex_count, const EdgeRange& edges) {
    Digraph g;
    g.offsets_.assign(vertex_count + 1, 0);
    for (const auto& e : edges) ++g.offsets_[e.tail + 1];
    for (std::size_t v = 0; v < vertex_count; ++v) g.offsets_[v + 1] += g.offsets_[v];
    g.arcs_.resize(g.offsets_.back());
    std::vector<std::uint32_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
    EdgeId id = 0;
    for (const auto& e : edges) g.arcs_[fill[e.tail]++] = Arc{e.head, id++};
    return g;
  }

  [[nodiscard]] std::size_t vertex_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  [[nodiscard]] std::size_t arc_count() const noexcept { return arcs_.size(); }

  [[nodiscard]] std::span<const Arc> out_arcs(VertexId v) const noexcept {
    return {arcs_.data() + offsets_[v], arcs_.data() + offsets_[v + 1]};
  }

 private:
  std::vector<std::uint32_t> offsets_;
  std::vector<Arc> arcs_;
};

}  // namespace stackspt
