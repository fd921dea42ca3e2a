#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "cmc/errors.hpp"

namespace cmc::detail {

// Exact k-nearest-neighbour search over a row-major point set with a time
// index per row. Candidates are ordered by (squared distance, time index);
// pruning uses non-strict bounds and squared distances accumulate in fixed
// coordinate order, so results match an exhaustive scan bit for bit, ties
// included.
class KdTree {
 public:
  struct Hit {
    double dist2;
    std::int64_t time;
    std::uint32_t row;
  };

  KdTree(const double* points, std::size_t count, std::size_t dim, const std::int64_t* times)
      : points_(points), times_(times), count_(count), dim_(dim) {
    if (count_ == 0) throw invalid_argument("KdTree: empty point set");
    if (dim_ == 0) throw invalid_argument("KdTree: zero dimension");
    order_.resize(count_);
    for (std::size_t i = 0; i < count_; ++i) order_[i] = static_cast<std::uint32_t>(i);
    nodes_.reserve(2 * count_ / kLeafSize + 2);
    root_ = build(0, static_cast<std::uint32_t>(count_));
  }

  // Rows whose time index lies within exclusion_radius of query_time are
  // inadmissible. Returns up to k hits sorted by (dist2, time) ascending.
  void knn(const double* query, std::int64_t query_time, std::int64_t exclusion_radius,
           std::size_t k, std::vector<Hit>& out) const {
    out.clear();
    if (k == 0) return;
    search(root_, query, query_time, exclusion_radius, k, out);
  }

 private:
  static constexpr std::uint32_t kLeafSize = 24;

  struct Node {
    std::uint32_t begin = 0, end = 0;  // leaf range into order_
    std::int32_t left = -1, right = -1;
    std::uint32_t split_dim = 0;
    double split_value = 0.0;
    bool leaf() const { return left < 0; }
  };

  const double* point(std::uint32_t row) const { return points_ + row * dim_; }

  std::int32_t build(std::uint32_t begin, std::uint32_t end) {
    Node node;
    node.begin = begin;
    node.end = end;
    if (end - begin > kLeafSize) {
      // split the widest dimension at its median
      std::size_t dim = 0;
      double extent = -1.0;
      for (std::size_t d = 0; d < dim_; ++d) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (std::uint32_t i = begin; i < end; ++i) {
          const double v = point(order_[i])[d];
          lo = std::min(lo, v);
          hi = std::max(hi, v);
        }
        if (hi - lo > extent) {
          extent = hi - lo;
          dim = d;
        }
      }
      if (extent > 0.0) {
        const std::uint32_t mid = begin + (end - begin) / 2;
        std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                         [&](std::uint32_t a, std::uint32_t b) {
                           return point(a)[dim] < point(b)[dim];
                         });
        node.split_dim = static_cast<std::uint32_t>(dim);
        node.split_value = point(order_[mid])[dim];
        const std::int32_t left = build(begin, mid);
        const std::int32_t right = build(mid, end);
        node.left = left;
        node.right = right;
      }
      // zero extent: every point is identical, keep the range as a leaf
    }
    nodes_.push_back(node);
    return static_cast<std::int32_t>(nodes_.size() - 1);
  }

  static bool better(const Hit& a, const Hit& b) {
    return a.dist2 < b.dist2 || (a.dist2 == b.dist2 && a.time < b.time);
  }

  static void insert_sorted(std::vector<Hit>& heap, std::size_t k, const Hit& hit) {
    if (heap.size() == k) {
      if (!better(hit, heap.back())) return;
      heap.pop_back();
    }
    auto pos = std::upper_bound(heap.begin(), heap.end(), hit, better);
    heap.insert(pos, hit);
  }

  void scan_leaf(const Node& node, const double* query, std::int64_t query_time,
                 std::int64_t exclusion_radius, std::size_t k, std::vector<Hit>& heap) const {
    for (std::uint32_t i = node.begin; i < node.end; ++i) {
      const std::uint32_t row = order_[i];
      const std::int64_t t = times_[row];
      const std::int64_t dt = t >= query_time ? t - query_time : query_time - t;
      if (dt <= exclusion_radius) continue;
      const double bound =
          heap.size() == k ? heap.back().dist2 : std::numeric_limits<double>::infinity();
      const double* p = point(row);
      double acc = 0.0;
      bool rejected = false;
      for (std::size_t d = 0; d < dim_; ++d) {
        const double diff = query[d] - p[d];
        acc += diff * diff;
        if (acc > bound) {  // strictly worse no matter how it finishes
          rejected = true;
          break;
        }
      }
      if (rejected) continue;
      insert_sorted(heap, k, Hit{acc, t, row});
    }
  }

  void search(std::int32_t index, const double* query, std::int64_t query_time,
              std::int64_t exclusion_radius, std::size_t k, std::vector<Hit>& heap) const {
    const Node& node = nodes_[static_cast<std::size_t>(index)];
    if (node.leaf()) {
      scan_leaf(node, query, query_time, exclusion_radius, k, heap);
      return;
    }
    const double diff = query[node.split_dim] - node.split_value;
    const std::int32_t near = diff < 0.0 ? node.left : node.right;
    const std::int32_t far = diff < 0.0 ? node.right : node.left;
    search(near, query, query_time, exclusion_radius, k, heap);
    // visit the far side on ties as well: an equally distant row with a lower
    // time index must still be able to displace the current worst
    if (heap.size() < k || diff * diff <= heap.back().dist2)
      search(far, query, query_time, exclusion_radius, k, heap);
  }

  const double* points_;
  const std::int64_t* times_;
  std::size_t count_;
  std::size_t dim_;
  std::vector<std::uint32_t> order_;
  std::vector<Node> nodes_;
  std::int32_t root_ = -1;
};

}  // namespace cmc::detail
