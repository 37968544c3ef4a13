#include "stackspt/range_tree.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>

namespace stackspt {

WeightedPointSet::WeightedPointSet(std::size_t dimension) : dim_(dimension) {
  if (dim_ == 0) throw std::invalid_argument("point dimension must be at least 1");
}

void WeightedPointSet::add(std::span<const ExtRational> point, const ExtRational& weight) {
  if (point.size() != dim_) throw std::invalid_argument("point has the wrong dimension");
  if (!weight.is_finite() || weight < 0) throw std::invalid_argument("point weight must be finite and nonnegative");
  coords_.insert(coords_.end(), point.begin(), point.end());
  weights_.push_back(weight);
}

namespace {

using Rank = std::uint32_t;
using PointId = std::uint32_t;

struct RankBox {
  std::vector<Rank> lo;
  std::vector<Rank> hi;  // inclusive
};

struct Shared {
  std::size_t dim = 0;
  std::size_t leaf_size = 32;
  std::vector<Rank> ranks;  // row-major, dim per point
  std::vector<ExtRational> weights;

  [[nodiscard]] Rank rank(PointId p, std::size_t axis) const { return ranks[p * dim + axis]; }

  [[nodiscard]] bool inside(PointId p, const RankBox& box, std::size_t first_axis) const {
    for (std::size_t a = first_axis; a < dim; ++a) {
      const Rank r = rank(p, a);
      if (r < box.lo[a] || r > box.hi[a]) return false;
    }
    return true;
  }

  void sort_by_axis(std::vector<PointId>& ids, std::size_t axis) const {
    std::stable_sort(ids.begin(), ids.end(), [&](PointId a, PointId b) { return rank(a, axis) < rank(b, axis); });
  }
};

class Structure {
 public:
  virtual ~Structure() = default;
  [[nodiscard]] virtual ExtRational query(const RankBox& box) const = 0;
};

std::unique_ptr<Structure> make_structure(const Shared& shared, std::vector<PointId> ids, std::size_t axis);

// Single remaining axis: sorted keys with prefix sums.
class LineStructure final : public Structure {
 public:
  LineStructure(const Shared& shared, std::vector<PointId> ids, std::size_t axis) : axis_(axis) {
    shared.sort_by_axis(ids, axis);
    keys_.reserve(ids.size());
    prefix_.reserve(ids.size() + 1);
    prefix_.emplace_back();
    for (const PointId p : ids) {
      keys_.push_back(shared.rank(p, axis));
      prefix_.push_back(prefix_.back() + shared.weights[p]);
    }
  }

  [[nodiscard]] ExtRational query(const RankBox& box) const override {
    const auto lo = std::lower_bound(keys_.begin(), keys_.end(), box.lo[axis_]) - keys_.begin();
    const auto hi = std::upper_bound(keys_.begin(), keys_.end(), box.hi[axis_]) - keys_.begin();
    if (lo >= hi) return {};
    return prefix_[hi] - prefix_[lo];
  }

 private:
  std::size_t axis_;
  std::vector<Rank> keys_;
  std::vector<ExtRational> prefix_;
};

// Binary tree over the points sorted along one axis. Node ranges are
// contiguous slices of that order.
struct TreeNode {
  std::uint32_t begin = 0;
  std::uint32_t end = 0;
  Rank min_key = 0;
  Rank max_key = 0;
  std::int32_t left = -1;
  std::int32_t right = -1;
  std::uint32_t offset = 0;  // layered arrays only

  [[nodiscard]] bool is_leaf() const noexcept { return left < 0; }
};

// Last two axes (x = axis, y = axis + 1) with cascaded positions.
class LayeredStructure final : public Structure {
 public:
  LayeredStructure(const Shared& shared, std::vector<PointId> ids, std::size_t axis)
      : shared_(shared), x_(axis), y_(axis + 1), by_x_(std::move(ids)) {
    shared.sort_by_axis(by_x_, x_);
    if (by_x_.empty()) return;
    auto sorted = build(0, static_cast<std::uint32_t>(by_x_.size()));
    root_y_.reserve(sorted.size());
    for (const PointId p : sorted) root_y_.push_back(shared.rank(p, y_));
  }

  [[nodiscard]] ExtRational query(const RankBox& box) const override {
    if (by_x_.empty()) return {};
    const auto lo = std::lower_bound(root_y_.begin(), root_y_.end(), box.lo[y_]) - root_y_.begin();
    const auto hi = std::upper_bound(root_y_.begin(), root_y_.end(), box.hi[y_]) - root_y_.begin();
    return visit(0, static_cast<std::uint32_t>(lo), static_cast<std::uint32_t>(hi), box);
  }

 private:
  // Returns the node's points in y order.
  std::vector<PointId> build(std::uint32_t begin, std::uint32_t end) {
    const auto index = static_cast<std::int32_t>(nodes_.size());
    nodes_.push_back({begin, end, shared_.rank(by_x_[begin], x_), shared_.rank(by_x_[end - 1], x_)});
    std::vector<PointId> sorted(by_x_.begin() + begin, by_x_.begin() + end);
    if (end - begin <= shared_.leaf_size) {
      shared_.sort_by_axis(sorted, y_);
      return sorted;
    }
    const std::uint32_t mid = begin + (end - begin) / 2;
    const auto left = static_cast<std::int32_t>(nodes_.size());
    const auto left_sorted = build(begin, mid);
    const auto right = static_cast<std::int32_t>(nodes_.size());
    const auto right_sorted = build(mid, end);

    TreeNode& node = nodes_[static_cast<std::size_t>(index)];
    node.left = left;
    node.right = right;
    node.offset = static_cast<std::uint32_t>(prefix_.size());

    sorted.clear();
    prefix_.emplace_back();
    left_count_.push_back(0);
    std::size_t a = 0;
    std::size_t b = 0;
    while (a < left_sorted.size() || b < right_sorted.size()) {
      const bool take_left =
          b == right_sorted.size() ||
          (a < left_sorted.size() && shared_.rank(left_sorted[a], y_) <= shared_.rank(right_sorted[b], y_));
      const PointId p = take_left ? left_sorted[a++] : right_sorted[b++];
      sorted.push_back(p);
      prefix_.push_back(prefix_.back() + shared_.weights[p]);
      left_count_.push_back(static_cast<std::uint32_t>(a));
    }
    return sorted;
  }

  // lo/hi: positions in this node's y order bounding the query's y range.
  [[nodiscard]] ExtRational visit(std::int32_t index, std::uint32_t lo, std::uint32_t hi, const RankBox& box) const {
    if (lo >= hi) return {};
    const TreeNode& node = nodes_[static_cast<std::size_t>(index)];
    if (node.max_key < box.lo[x_] || node.min_key > box.hi[x_]) return {};
    const bool covered = box.lo[x_] <= node.min_key && node.max_key <= box.hi[x_];
    if (node.is_leaf()) return scan(node, box);
    if (covered) return prefix_[node.offset + hi] - prefix_[node.offset + lo];
    const std::uint32_t left_lo = left_count_[node.offset + lo];
    const std::uint32_t left_hi = left_count_[node.offset + hi];
    return visit(node.left, left_lo, left_hi, box) + visit(node.right, lo - left_lo, hi - left_hi, box);
  }

  [[nodiscard]] ExtRational scan(const TreeNode& node, const RankBox& box) const {
    ExtRational sum;
    for (std::uint32_t i = node.begin; i < node.end; ++i) {
      const PointId p = by_x_[i];
      if (shared_.inside(p, box, x_)) sum += shared_.weights[p];
    }
    return sum;
  }

  const Shared& shared_;
  std::size_t x_;
  std::size_t y_;
  std::vector<PointId> by_x_;
  std::vector<Rank> root_y_;
  std::vector<TreeNode> nodes_;
  std::vector<ExtRational> prefix_;
  std::vector<std::uint32_t> left_count_;
};

// Three or more remaining axes: each internal node owns a structure on the
// points of its slice over the following axes.
class NestedStructure final : public Structure {
 public:
  NestedStructure(const Shared& shared, std::vector<PointId> ids, std::size_t axis)
      : shared_(shared), axis_(axis), by_key_(std::move(ids)) {
    shared.sort_by_axis(by_key_, axis_);
    if (!by_key_.empty()) build(0, static_cast<std::uint32_t>(by_key_.size()));
  }

  [[nodiscard]] ExtRational query(const RankBox& box) const override {
    if (by_key_.empty()) return {};
    return visit(0, box);
  }

 private:
  void build(std::uint32_t begin, std::uint32_t end) {
    const auto index = nodes_.size();
    nodes_.push_back({begin, end, shared_.rank(by_key_[begin], axis_), shared_.rank(by_key_[end - 1], axis_)});
    children_.emplace_back();
    if (end - begin <= shared_.leaf_size) return;
    children_[index] = make_structure(shared_, {by_key_.begin() + begin, by_key_.begin() + end}, axis_ + 1);
    const std::uint32_t mid = begin + (end - begin) / 2;
    nodes_[index].left = static_cast<std::int32_t>(nodes_.size());
    build(begin, mid);
    nodes_[index].right = static_cast<std::int32_t>(nodes_.size());
    build(mid, end);
  }

  [[nodiscard]] ExtRational visit(std::int32_t index, const RankBox& box) const {
    const TreeNode& node = nodes_[static_cast<std::size_t>(index)];
    if (node.max_key < box.lo[axis_] || node.min_key > box.hi[axis_]) return {};
    if (node.is_leaf()) {
      ExtRational sum;
      for (std::uint32_t i = node.begin; i < node.end; ++i) {
        const PointId p = by_key_[i];
        if (shared_.inside(p, box, axis_)) sum += shared_.weights[p];
      }
      return sum;
    }
    if (box.lo[axis_] <= node.min_key && node.max_key <= box.hi[axis_]) {
      return children_[static_cast<std::size_t>(index)]->query(box);
    }
    return visit(node.left, box) + visit(node.right, box);
  }

  const Shared& shared_;
  std::size_t axis_;
  std::vector<PointId> by_key_;
  std::vector<TreeNode> nodes_;
  std::vector<std::unique_ptr<Structure>> children_;
};

std::unique_ptr<Structure> make_structure(const Shared& shared, std::vector<PointId> ids, std::size_t axis) {
  const std::size_t remaining = shared.dim - axis;
  if (remaining == 1) return std::make_unique<LineStructure>(shared, std::move(ids), axis);
  if (remaining == 2) return std::make_unique<LayeredStructure>(shared, std::move(ids), axis);
  return std::make_unique<NestedStructure>(shared, std::move(ids), axis);
}

}  // namespace

class RangeTree::Impl {
 public:
  Impl(const WeightedPointSet& points, std::size_t leaf_size) {
    shared_.dim = points.dimension();
    shared_.leaf_size = std::max<std::size_t>(leaf_size, 1);
    const std::size_t n = points.size();
    if (n > UINT32_MAX / 2) throw std::length_error("too many points for a range tree");
    shared_.weights.reserve(n);
    for (std::size_t i = 0; i < n; ++i) shared_.weights.push_back(points.weight(i));

    axes_.resize(shared_.dim);
    shared_.ranks.resize(n * shared_.dim);
    for (std::size_t a = 0; a < shared_.dim; ++a) {
      auto& axis = axes_[a];
      axis.reserve(n);
      for (std::size_t i = 0; i < n; ++i) axis.push_back(points.point(i)[a]);
      std::sort(axis.begin(), axis.end());
      axis.erase(std::unique(axis.begin(), axis.end()), axis.end());
      for (std::size_t i = 0; i < n; ++i) {
        const auto it = std::lower_bound(axis.begin(), axis.end(), points.point(i)[a]);
        shared_.ranks[i * shared_.dim + a] = static_cast<Rank>(it - axis.begin());
      }
    }
    std::vector<PointId> ids(n);
    for (std::size_t i = 0; i < n; ++i) ids[i] = static_cast<PointId>(i);
    root_ = make_structure(shared_, std::move(ids), 0);
  }

  [[nodiscard]] std::size_t dimension() const noexcept { return shared_.dim; }
  [[nodiscard]] std::size_t size() const noexcept { return shared_.weights.size(); }

  [[nodiscard]] ExtRational query(const QueryRect& rect) const {
    if (rect.dimension() != shared_.dim) throw std::invalid_argument("query rectangle dimension does not match the tree");
    RankBox box{std::vector<Rank>(shared_.dim), std::vector<Rank>(shared_.dim)};
    for (std::size_t a = 0; a < shared_.dim; ++a) {
      const auto& axis = axes_[a];
      std::size_t lo = 0;
      std::size_t hi_excl = axis.size();
      if (const auto& b = rect.lower(a)) {
        lo = static_cast<std::size_t>(
            (b->closed ? std::lower_bound(axis.begin(), axis.end(), b->value) : std::upper_bound(axis.begin(), axis.end(), b->value)) -
            axis.begin());
      }
      if (const auto& b = rect.upper(a)) {
        hi_excl = static_cast<std::size_t>(
            (b->closed ? std::upper_bound(axis.begin(), axis.end(), b->value) : std::lower_bound(axis.begin(), axis.end(), b->value)) -
            axis.begin());
      }
      if (lo >= hi_excl) return {};
      box.lo[a] = static_cast<Rank>(lo);
      box.hi[a] = static_cast<Rank>(hi_excl - 1);
    }
    return root_->query(box);
  }

 private:
  Shared shared_;
  std::vector<std::vector<ExtRational>> axes_;
  std::unique_ptr<Structure> root_;
};

RangeTree::RangeTree(const WeightedPointSet& points, std::size_t leaf_size)
    : impl_(std::make_unique<const Impl>(points, leaf_size)) {}
RangeTree::~RangeTree() = default;
RangeTree::RangeTree(RangeTree&&) noexcept = default;
RangeTree& RangeTree::operator=(RangeTree&&) noexcept = default;

std::size_t RangeTree::dimension() const noexcept { return impl_->dimension(); }
std::size_t RangeTree::size() const noexcept { return impl_->size(); }
ExtRational RangeTree::query_weight(const QueryRect& rect) const { return impl_->query(rect); }

}  // namespace stackspt
