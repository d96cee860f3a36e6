#pragma once

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "patchfit/mesh.hpp"
#include "patchfit/vec3.hpp"

namespace patchfit {

struct NearestResult {
  int index = -1;
  double distance = 0.0;
};

// Exact nearest-neighbor search over a fixed point set (median-split kd-tree
// with full backtracking). Ties are broken by the lowest point ordinal, and
// pruning is non-strict so equal-distance branches are still visited; results
// match a linear scan exactly.
class SpatialIndex {
 public:
  SpatialIndex() = default;

  explicit SpatialIndex(std::vector<Vec3> points) : points_(std::move(points)) {
    if (points_.empty()) throw std::invalid_argument("SpatialIndex: empty point set");
    std::vector<int> order(points_.size());
    std::iota(order.begin(), order.end(), 0);
    nodes_.reserve(points_.size());
    root_ = build(order.data(), static_cast<int>(order.size()));
  }

  NearestResult nearest(const Vec3& q) const {
    NearestResult best{-1, 0.0};
    double best_d2 = 1e300;
    search(root_, q, best, best_d2);
    best.distance = std::sqrt(best_d2);
    return best;
  }

  size_t size() const { return points_.size(); }
  const Vec3& point(int i) const { return points_[i]; }

 private:
  struct Node {
    int point = -1;
    int axis = 0;
    int left = -1;
    int right = -1;
  };

  int build(int* order, int count) {
    if (count <= 0) return -1;
    Box3 box;
    for (int i = 0; i < count; ++i) box.expand(points_[order[i]]);
    Vec3 ext = box.extent();
    int axis = 0;
    if (ext.y > ext[axis]) axis = 1;
    if (ext.z > ext[axis]) axis = 2;
    int mid = count / 2;
    std::nth_element(order, order + mid, order + count, [&](int a, int b) {
      double pa = points_[a][axis], pb = points_[b][axis];
      return pa < pb || (pa == pb && a < b);
    });
    Node node;
    node.point = order[mid];
    node.axis = axis;
    int id = static_cast<int>(nodes_.size());
    nodes_.push_back(node);
    int l = build(order, mid);
    int r = build(order + mid + 1, count - mid - 1);
    nodes_[id].left = l;
    nodes_[id].right = r;
    return id;
  }

  void search(int id, const Vec3& q, NearestResult& best, double& best_d2) const {
    if (id < 0) return;
    const Node& node = nodes_[id];
    const Vec3& p = points_[node.point];
    double d2 = distance2(q, p);
    if (d2 < best_d2 || (d2 == best_d2 && node.point < best.index)) {
      best_d2 = d2;
      best.index = node.point;
    }
    double diff = q[node.axis] - p[node.axis];
    int near = diff < 0.0 ? node.left : node.right;
    int far = diff < 0.0 ? node.right : node.left;
    search(near, q, best, best_d2);
    if (diff * diff <= best_d2) search(far, q, best, best_d2);
  }

  std::vector<Vec3> points_;
  std::vector<Node> nodes_;
  int root_ = -1;
};

inline SpatialIndex build_index(const std::vector<SurfaceSample>& samples) {
  std::vector<Vec3> pts(samples.size());
  for (size_t i = 0; i < samples.size(); ++i) pts[i] = samples[i].position;
  return SpatialIndex(std::move(pts));
}

inline SpatialIndex build_index(const std::vector<Vec3>& points) { return SpatialIndex(points); }

}  // namespace patchfit
