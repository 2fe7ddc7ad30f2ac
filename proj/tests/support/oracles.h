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

// Brute-force reference implementations. They share no code with the
// library: plain std containers, explicit loops, no spatial indices.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace groundmem::oracle {

using P3 = Eigen::Vector3d;
using Cell = std::tuple<int64_t, int64_t, int64_t>;

Cell CellOf(const P3& p, double delta);
std::set<Cell> CellsOf(const std::vector<P3>& points, double delta);

// max(|A n B| / |A|, |A n B| / |B|) by set intersection.
double Containment(const std::set<Cell>& a, const std::set<Cell>& b);

// Axis-aligned footprint area of the points after rotating by -yaw.
double RotatedArea(const std::vector<P3>& points, double yaw);

struct YawMinimum {
  double yaw = 0.0;
  double area = 0.0;
};
// Smallest-area rectangle over yaw = k * step in [0, pi/2).
YawMinimum MinAreaYaw(const std::vector<P3>& points, double step);

// Smallest angular distance between two yaws modulo pi/2.
double YawGap(double a, double b);

// Front cuboid membership written directly from the dot-product definition.
bool InFront(const P3& anchor, const P3& facing, const P3& p, double depth, double half_width,
             double min_height);
bool InBox(const P3& lo, const P3& hi, const P3& p);

// Exhaustive retrieval: per frame, count distinct voxels of points passing
// `inside`, drop zero counts, sort by count desc then frame asc, keep k.
std::vector<std::pair<int, int64_t>> RankFrames(
    const std::vector<std::vector<P3>>& frames, const std::function<bool(const P3&)>& inside,
    double delta, int k);

// k nearest by full scan; (index, squared distance), ties by index.
std::vector<std::pair<size_t, double>> Knn(const std::vector<P3>& points, const P3& q, int k);

// Connected components of occupied cells under 26-connectivity, by BFS.
// Returns a component id per point.
std::vector<int> CellComponents(const std::vector<P3>& points, double cell);

// Pinhole projection (u, v) of a camera-frame point.
Eigen::Vector2d Project(double fx, double fy, double cx, double cy, const P3& p);

// Fresh scratch directory under the system temp path, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

std::string ReadFile(const std::filesystem::path& p);

}  // namespace groundmem::oracle
