// Copyright 2026 The groundmem Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "groundmem/geometry/kdtree.h"

#include <algorithm>
#include <numeric>

namespace groundmem {
namespace {
constexpr size_t kLeafSize = 12;
}  // namespace

KdTree::KdTree(std::span<const Vec3> points) : points_(points), order_(points.size()) {
  std::iota(order_.begin(), order_.end(), size_t{0});
  if (!order_.empty()) {
    nodes_.reserve(2 * (order_.size() / kLeafSize + 1));
    Build(0, order_.size(), 0);
  }
}

int KdTree::Build(size_t begin, size_t end, int depth) {
  const int id = static_cast<int>(nodes_.size());
  nodes_.push_back({begin, end, -1, 0.0, -1, -1});
  if (end - begin <= kLeafSize) return id;

  Vec3 lo = points_[order_[begin]], hi = lo;
  for (size_t i = begin; i < end; ++i) {
    lo = lo.cwiseMin(points_[order_[i]]);
    hi = hi.cwiseMax(points_[order_[i]]);
  }
  int axis = 0;
  (hi - lo).maxCoeff(&axis);
  const size_t mid = begin + (end - begin) / 2;
  std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                   [&](size_t a, size_t b) { return points_[a][axis] < points_[b][axis]; });
  const double split = points_[order_[mid]][axis];
  const int left = Build(begin, mid, depth + 1);
  const int right = Build(mid, end, depth + 1);
  Node& node = nodes_[size_t(id)];
  node.axis = axis;
  node.split = split;
  node.left = left;
  node.right = right;
  return id;
}

void KdTree::Search(int node_id, const Vec3& q, size_t k,
                    std::vector<std::pair<double, size_t>>* heap) const {
  const Node& node = nodes_[size_t(node_id)];
  if (node.axis < 0) {
    for (size_t i = node.begin; i < node.end; ++i) {
      const size_t idx = order_[i];
      const double d2 = (points_[idx] - q).squaredNorm();
      if (heap->size() < k) {
        heap->emplace_back(d2, idx);
        std::push_heap(heap->begin(), heap->end());
      } else if (d2 < heap->front().first) {
        std::pop_heap(heap->begin(), heap->end());
        heap->back() = {d2, idx};
        std::push_heap(heap->begin(), heap->end());
      }
    }
    return;
  }
  const double diff = q[node.axis] - node.split;
  const int near = diff < 0.0 ? node.left : node.right;
  const int far = diff < 0.0 ? node.right : node.left;
  Search(near, q, k, heap);
  if (heap->size() < k || diff * diff < heap->front().first) Search(far, q, k, heap);
}

std::vector<std::pair<size_t, double>> KdTree::Nearest(const Vec3& query, size_t k) const {
  std::vector<std::pair<double, size_t>> heap;
  if (k == 0 || nodes_.empty()) return {};
  heap.reserve(k + 1);
  Search(0, query, k, &heap);
  std::sort_heap(heap.begin(), heap.end());
  std::vector<std::pair<size_t, double>> out;
  out.reserve(heap.size());
  for (const auto& [d2, idx] : heap) out.emplace_back(idx, d2);
  return out;
}

}  // namespace groundmem
