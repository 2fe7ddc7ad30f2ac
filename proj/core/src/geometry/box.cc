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

#include "groundmem/geometry/box.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "groundmem/error.h"

namespace groundmem {
namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

struct Extent {
  double lo = 0.0;
  double hi = 0.0;
};

// Percentile-trimmed [lo, hi] of `values`; reorders the buffer.
Extent TrimmedExtent(std::vector<double>& values, double trim) {
  const size_t n = values.size();
  const size_t k = static_cast<size_t>(std::floor(trim * double(n)));
  if (k == 0) {
    auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    return {*lo, *hi};
  }
  auto lo_it = values.begin() + k;
  std::nth_element(values.begin(), lo_it, values.end());
  const double lo = *lo_it;
  if (n - 1 - k == k) return {lo, lo};
  // The second selection reorders [lo_it, end), so read lo first.
  auto hi_it = values.begin() + (n - 1 - k);
  std::nth_element(lo_it + 1, hi_it, values.end());
  return {lo, *hi_it};
}

void CheckFootprint(std::span<const Vec3> points) {
  if (points.size() < 3) {
    throw DegenerateGeometryError("yaw box fit needs at least 3 points, got " +
                                  std::to_string(points.size()));
  }
  const Vec2 p0 = points[0].head<2>();
  double far2 = 0.0;
  Vec2 dir = Vec2::Zero();
  for (const Vec3& p : points) {
    const Vec2 d = p.head<2>() - p0;
    if (d.squaredNorm() > far2) {
      far2 = d.squaredNorm();
      dir = d;
    }
  }
  if (far2 == 0.0) throw DegenerateGeometryError("coincident bird's-eye-view footprint");
  double max_cross = 0.0;
  for (const Vec3& p : points) {
    const Vec2 d = p.head<2>() - p0;
    max_cross = std::max(max_cross, std::abs(dir.x() * d.y() - dir.y() * d.x()));
  }
  if (max_cross <= 1e-9 * far2) {
    throw DegenerateGeometryError("collinear bird's-eye-view footprint");
  }
}

Polygon2 Footprint(const std::array<Vec2, 4>& corners) {
  return Polygon2(corners.begin(), corners.end());
}

double IouOfPolygons(const Polygon2& a, const Polygon2& b) {
  const double area_a = PolygonArea(a);
  const double area_b = PolygonArea(b);
  if (area_a <= 0.0 || area_b <= 0.0) return 0.0;
  const double inter = PolygonArea(ClipConvex(a, b));
  const double uni = area_a + area_b - inter;
  if (uni <= 0.0) return 0.0;
  return std::clamp(inter / uni, 0.0, 1.0);
}

}  // namespace

Aabb Aabb::FromPoints(std::span<const Vec3> points) {
  if (points.empty()) throw InvalidArgumentError("bounding box of an empty point set");
  Aabb box{points[0], points[0]};
  for (const Vec3& p : points) box.Extend(p);
  return box;
}

std::array<Vec2, 4> YawBox::BevCorners() const {
  const Vec2 u(std::cos(yaw), std::sin(yaw));
  const Vec2 v(-u.y(), u.x());
  const Vec2 c = center.head<2>();
  const Vec2 hu = 0.5 * size.x() * u;
  const Vec2 hv = 0.5 * size.y() * v;
  return {c - hu - hv, c + hu - hv, c + hu + hv, c - hu + hv};
}

Aabb YawBox::BoundingAabb() const {
  const auto corners = BevCorners();
  Aabb box;
  box.min = Vec3(corners[0].x(), corners[0].y(), center.z() - 0.5 * size.z());
  box.max = Vec3(corners[0].x(), corners[0].y(), center.z() + 0.5 * size.z());
  for (const Vec2& c : corners) {
    box.min.head<2>() = box.min.head<2>().cwiseMin(c);
    box.max.head<2>() = box.max.head<2>().cwiseMax(c);
  }
  return box;
}

bool YawBox::Contains(const Vec3& p) const {
  const Vec3 d = p - center;
  const double cu = std::cos(yaw), su = std::sin(yaw);
  const double lu = d.x() * cu + d.y() * su;
  const double lv = -d.x() * su + d.y() * cu;
  return std::abs(lu) <= 0.5 * size.x() && std::abs(lv) <= 0.5 * size.y() &&
         std::abs(d.z()) <= 0.5 * size.z();
}

YawBox CanonicalizeYaw(const YawBox& box) {
  YawBox out = box;
  double quarter = std::floor(box.yaw / kHalfPi);
  out.yaw = box.yaw - quarter * kHalfPi;
  if (out.yaw >= kHalfPi) {
    out.yaw -= kHalfPi;
    quarter += 1.0;
  }
  if (out.yaw < 0.0) out.yaw = 0.0;
  if (static_cast<int64_t>(quarter) % 2 != 0) std::swap(out.size.x(), out.size.y());
  return out;
}

double TrimmedBevArea(std::span<const Vec3> points, double yaw, double trim_fraction) {
  const double c = std::cos(yaw), s = std::sin(yaw);
  std::vector<double> u(points.size()), v(points.size());
  for (size_t i = 0; i < points.size(); ++i) {
    u[i] = points[i].x() * c + points[i].y() * s;
    v[i] = -points[i].x() * s + points[i].y() * c;
  }
  const Extent eu = TrimmedExtent(u, trim_fraction);
  const Extent ev = TrimmedExtent(v, trim_fraction);
  return (eu.hi - eu.lo) * (ev.hi - ev.lo);
}

YawBox FitYawBox(std::span<const Vec3> points, const YawFitConfig& cfg) {
  if (!(cfg.angle_step > 0.0) || cfg.angle_step > kHalfPi) {
    throw InvalidArgumentError("yaw angle step must lie in (0, pi/2]");
  }
  if (!(cfg.trim_fraction >= 0.0 && cfg.trim_fraction < 0.5)) {
    throw InvalidArgumentError("trim fraction must lie in [0, 0.5)");
  }
  CheckFootprint(points);

  // Work relative to the footprint mean so results do not depend on where
  // the object sits in the scene.
  Vec2 origin = Vec2::Zero();
  for (const Vec3& p : points) origin += p.head<2>();
  origin /= double(points.size());

  const size_t n = points.size();
  std::vector<double> xs(n), ys(n), u(n), v(n);
  for (size_t i = 0; i < n; ++i) {
    xs[i] = points[i].x() - origin.x();
    ys[i] = points[i].y() - origin.y();
  }

  double best_area = std::numeric_limits<double>::infinity();
  double best_yaw = 0.0;
  Extent best_u, best_v;
  for (int k = 0;; ++k) {
    const double yaw = k * cfg.angle_step;
    if (yaw >= kHalfPi - 1e-12) break;
    const double c = std::cos(yaw), s = std::sin(yaw);
    for (size_t i = 0; i < n; ++i) {
      u[i] = xs[i] * c + ys[i] * s;
      v[i] = -xs[i] * s + ys[i] * c;
    }
    const Extent eu = TrimmedExtent(u, cfg.trim_fraction);
    const Extent ev = TrimmedExtent(v, cfg.trim_fraction);
    const double area = (eu.hi - eu.lo) * (ev.hi - ev.lo);
    if (area < best_area * (1.0 - 1e-12)) {
      best_area = area;
      best_yaw = yaw;
      best_u = eu;
      best_v = ev;
    }
  }

  std::vector<double> zs(n);
  for (size_t i = 0; i < n; ++i) zs[i] = points[i].z();
  const Extent ez = TrimmedExtent(zs, cfg.trim_fraction);

  const double uc = 0.5 * (best_u.lo + best_u.hi);
  const double vc = 0.5 * (best_v.lo + best_v.hi);
  const double c = std::cos(best_yaw), s = std::sin(best_yaw);
  YawBox box;
  box.yaw = best_yaw;
  box.center = Vec3(origin.x() + uc * c - vc * s, origin.y() + uc * s + vc * c,
                    0.5 * (ez.lo + ez.hi));
  box.size = Vec3(std::max(best_u.hi - best_u.lo, kMinBoxExtent),
                  std::max(best_v.hi - best_v.lo, kMinBoxExtent),
                  std::max(ez.hi - ez.lo, kMinBoxExtent));
  return box;
}

double PolygonArea(const Polygon2& poly) {
  if (poly.size() < 3) return 0.0;
  double twice = 0.0;
  for (size_t i = 0; i < poly.size(); ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % poly.size()];
    twice += a.x() * b.y() - a.y() * b.x();
  }
  return std::abs(0.5 * twice);
}

Polygon2 ClipConvex(const Polygon2& subject, const Polygon2& clip) {
  Polygon2 out = subject;
  for (size_t e = 0; e < clip.size() && !out.empty(); ++e) {
    const Vec2& a = clip[e];
    const Vec2& b = clip[(e + 1) % clip.size()];
    const Vec2 edge = b - a;
    auto side = [&](const Vec2& p) {
      return edge.x() * (p.y() - a.y()) - edge.y() * (p.x() - a.x());
    };
    Polygon2 input;
    input.swap(out);
    for (size_t i = 0; i < input.size(); ++i) {
      const Vec2& cur = input[i];
      const Vec2& prev = input[(i + input.size() - 1) % input.size()];
      const double sc = side(cur);
      const double sp = side(prev);
      if (sc >= 0.0) {
        if (sp < 0.0) out.push_back(prev + (cur - prev) * (sp / (sp - sc)));
        out.push_back(cur);
      } else if (sp >= 0.0) {
        out.push_back(prev + (cur - prev) * (sp / (sp - sc)));
      }
    }
  }
  return out;
}

double BevIou(const YawBox& a, const YawBox& b) {
  return IouOfPolygons(Footprint(a.BevCorners()), Footprint(b.BevCorners()));
}

double BevIou(const Aabb& a, const Aabb& b) {
  const double ix = std::max(0.0, std::min(a.max.x(), b.max.x()) - std::max(a.min.x(), b.min.x()));
  const double iy = std::max(0.0, std::min(a.max.y(), b.max.y()) - std::max(a.min.y(), b.min.y()));
  const double area_a = (a.max.x() - a.min.x()) * (a.max.y() - a.min.y());
  const double area_b = (b.max.x() - b.min.x()) * (b.max.y() - b.min.y());
  if (area_a <= 0.0 || area_b <= 0.0) return 0.0;
  const double inter = ix * iy;
  return inter / (area_a + area_b - inter);
}

}  // namespace groundmem
