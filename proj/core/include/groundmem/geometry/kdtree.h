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

#pragma once

#include <span>
#include <utility>
#include <vector>

#include "groundmem/types.h"

namespace groundmem {

// Static 3D kd-tree for k-nearest-neighbor queries over a borrowed point
// array. The points must outlive the tree.
class KdTree {
 public:
  explicit KdTree(std::span<const Vec3> points);

  // The k nearest points to `query` as (index, squared distance), nearest
  // first. Includes the query point itself when it is part of the set.
  std::vector<std::pair<size_t, double>> Nearest(const Vec3& query, size_t k) const;

 private:
  struct Node {
    size_t begin;  // range into order_
    size_t end;
    int axis;      // -1 for a leaf
    double split;
    int left;
    int right;
  };

  int Build(size_t begin, size_t end, int depth);
  void Search(int node, const Vec3& q, size_t k,
              std::vector<std::pair<double, size_t>>* heap) const;

  std::span<const Vec3> points_;
  std::vector<size_t> order_;
  std::vector<Node> nodes_;
};

}  // namespace groundmem
