#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "stackspt/ext_rational.hpp"

namespace stackspt {

// Points in R^d (coordinates may be -inf or +inf) with nonnegative weights.
class WeightedPointSet {
 public:
  explicit WeightedPointSet(std::size_t dimension);

  void add(std::span<const ExtRational> point, const ExtRational& weight);

  [[nodiscard]] std::size_t dimension() const noexcept { return dim_; }
  [[nodiscard]] std::size_t size() const noexcept { return weights_.size(); }
  [[nodiscard]] std::span<const ExtRational> point(std::size_t i) const { return {coords_.data() + i * dim_, dim_}; }
  [[nodiscard]] const ExtRational& weight(std::size_t i) const { return weights_[i]; }

 private:
  std::size_t dim_;
  std::vector<ExtRational> coords_;
  std::vector<ExtRational> weights_;
};

struct Bound {
  ExtRational value;
  bool closed = true;

  friend bool operator==(const Bound&, const Bound&) = default;
};

// Product of one interval per axis. Each end is either unbounded or a
// value that is included (closed) or excluded (open).
class QueryRect {
 public:
  explicit QueryRect(std::size_t dimension) : lower_(dimension), upper_(dimension) {}

  QueryRect& set_lower(std::size_t axis, ExtRational value, bool closed) {
    lower_.at(axis) = Bound{value, closed};
    return *this;
  }
  QueryRect& set_upper(std::size_t axis, ExtRational value, bool closed) {
    upper_.at(axis) = Bound{value, closed};
    return *this;
  }

  [[nodiscard]] std::size_t dimension() const noexcept { return lower_.size(); }
  [[nodiscard]] const std::optional<Bound>& lower(std::size_t axis) const { return lower_.at(axis); }
  [[nodiscard]] const std::optional<Bound>& upper(std::size_t axis) const { return upper_.at(axis); }

  friend bool operator==(const QueryRect&, const QueryRect&) = default;

 private:
  std::vector<std::optional<Bound>> lower_;
  std::vector<std::optional<Bound>> upper_;
};

// Static weighted orthogonal range-sum structure.
//
// Coordinates are replaced by per-axis ranks at build time, so the nested
// trees work on 32-bit integers and a query converts its bounds with one
// binary search per axis. The last two axes form a layered tree: every node
// keeps prefix sums of its points in last-axis order plus, per position, how
// many of those points fall into the left child, so one binary search at the
// root is cascaded down instead of repeated per node. Leading axes use
// ordinary range trees whose nodes own a structure on the remaining axes.
// Nodes with at most `leaf_size` points are scanned directly.
class RangeTree {
 public:
  explicit RangeTree(const WeightedPointSet& points, std::size_t leaf_size = 32);
  ~RangeTree();
  RangeTree(RangeTree&&) noexcept;
  RangeTree& operator=(RangeTree&&) noexcept;

  [[nodiscard]] std::size_t dimension() const noexcept;
  [[nodiscard]] std::size_t size() const noexcept;

  // Exact total weight of the points inside rect. Throws
  // std::invalid_argument when the dimensions differ.
  [[nodiscard]] ExtRational query_weight(const QueryRect& rect) const;

  class Impl;

 private:
  std::unique_ptr<const Impl> impl_;
};

}  // namespace stackspt
