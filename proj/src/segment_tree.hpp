#pragma once

// Bounding-box hierarchy over the segments of a polyline. Pairs of subtrees
// whose boxes are disjoint are pruned; surviving leaf pairs are handed to the
// caller for an exact segment test.

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

#include "plait/geometry.hpp"

namespace plait::detail {

class SegmentTree {
 public:
  struct Node {
    Rect box;
    std::size_t lo;  // first segment
    std::size_t hi;  // one past last segment
    int left = -1;
    int right = -1;
  };

  static constexpr std::size_t kLeafSize = 8;

  explicit SegmentTree(std::span<const Point2> vertices) : vertices_(vertices) {
    if (vertices.size() >= 2) {
      nodes_.reserve(2 * (vertices.size() / kLeafSize + 1));
      build(0, vertices.size() - 1);
    }
  }

  const Node& node(int i) const { return nodes_[static_cast<std::size_t>(i)]; }
  bool empty() const { return nodes_.empty(); }

 private:
  int build(std::size_t lo, std::size_t hi) {
    const int idx = static_cast<int>(nodes_.size());
    nodes_.push_back({Rect::bounding(vertices_.subspan(lo, hi - lo + 1)), lo, hi});
    if (hi - lo > kLeafSize) {
      const std::size_t mid = lo + (hi - lo) / 2;
      const int l = build(lo, mid);
      const int r = build(mid, hi);
      nodes_[static_cast<std::size_t>(idx)].left = l;
      nodes_[static_cast<std::size_t>(idx)].right = r;
    }
    return idx;
  }

  std::span<const Point2> vertices_;
  std::vector<Node> nodes_;
};

template <class Visit>
void visit_pairs(const SegmentTree& a, int na, const SegmentTree& b, int nb, double tol,
                 Visit& visit) {
  const auto& A = a.node(na);
  const auto& B = b.node(nb);
  const double slack = tol * std::max(A.box.diameter(), B.box.diameter());
  if (!A.box.overlaps(B.box, slack)) return;
  const bool leaf_a = A.left < 0;
  const bool leaf_b = B.left < 0;
  if (leaf_a && leaf_b) {
    for (std::size_t i = A.lo; i < A.hi; ++i) {
      for (std::size_t j = B.lo; j < B.hi; ++j) visit(i, j);
    }
    return;
  }
  if (!leaf_a && (leaf_b || A.hi - A.lo >= B.hi - B.lo)) {
    visit_pairs(a, A.left, b, nb, tol, visit);
    visit_pairs(a, A.right, b, nb, tol, visit);
  } else {
    visit_pairs(a, na, b, B.left, tol, visit);
    visit_pairs(a, na, b, B.right, tol, visit);
  }
}

// Calls visit(i, j) for every segment pair whose boxes may touch. When both
// trees are the same object, each unordered pair is visited once with i <= j.
template <class Visit>
void for_each_candidate_pair(const SegmentTree& a, const SegmentTree& b, double tol, Visit visit) {
  if (a.empty() || b.empty()) return;
  if (&a == &b) {
    auto ordered = [&](std::size_t i, std::size_t j) {
      if (i <= j) visit(i, j);
    };
    visit_pairs(a, 0, b, 0, tol, ordered);
    return;
  }
  visit_pairs(a, 0, b, 0, tol, visit);
}

}  // namespace plait::detail
