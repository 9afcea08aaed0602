// Copyright 2026 The softras Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "softras/voxel.hpp"

#include <algorithm>
#include <string>

#include "softras/error.hpp"

namespace softras {
namespace {

// Fixed offsets of the ray origin in (y, z), keeping rays off edges and
// vertices that sit exactly on cell-center lines.
constexpr double kJitterY = 1e-7;
constexpr double kJitterZ = 1.3e-7;

}  // namespace

Vec3 VoxelGrid::cell_center(int i, int j, int k) const {
  const Vec3 step = (bounds.hi - bounds.lo) / resolution;
  return bounds.lo + Vec3((i + 0.5) * step.x(), (j + 0.5) * step.y(), (k + 0.5) * step.z());
}

std::size_t VoxelGrid::count() const {
  return static_cast<std::size_t>(std::count(occupancy.begin(), occupancy.end(), 1));
}

Bounds mesh_bounds(const Mesh& mesh) {
  Bounds b;
  if (mesh.vertices.empty()) return b;
  b.lo = b.hi = mesh.vertices.front();
  for (const Vec3& v : mesh.vertices) {
    b.lo = b.lo.cwiseMin(v);
    b.hi = b.hi.cwiseMax(v);
  }
  return b;
}

Bounds evaluation_bounds(const Mesh& a, const Mesh& b, double margin) {
  const Bounds ba = mesh_bounds(a);
  const Bounds bb = mesh_bounds(b);
  const Vec3 lo = ba.lo.cwiseMin(bb.lo);
  const Vec3 hi = ba.hi.cwiseMax(bb.hi);
  const Vec3 center = (lo + hi) / 2.0;
  const Vec3 half = (hi - lo) / 2.0 * (1.0 + margin);
  return {center - half, center + half};
}

VoxelGrid voxelize(const Mesh& mesh, int resolution, const Bounds& bounds) {
  if (resolution < 2) throw ValidationError("voxel resolution must be at least 2");
  if (!((bounds.hi - bounds.lo).minCoeff() > 0.0)) {
    throw ValidationError("voxel bounds must have positive extent on every axis");
  }
  validate(mesh);
  if (const std::size_t open = count_boundary_edges(mesh); open > 0) {
    throw ValidationError("cannot voxelize an open mesh (" + std::to_string(open) +
                          " boundary edges)");
  }

  VoxelGrid grid;
  grid.resolution = resolution;
  grid.bounds = bounds;
  grid.occupancy.assign(std::size_t(resolution) * resolution * resolution, 0);

  struct YzBox {
    double y_lo, y_hi, z_lo, z_hi;
  };
  std::vector<YzBox> boxes;
  boxes.reserve(mesh.faces.size());
  for (const Face& f : mesh.faces) {
    const Vec3& a = mesh.vertices[f[0]];
    const Vec3& b = mesh.vertices[f[1]];
    const Vec3& c = mesh.vertices[f[2]];
    boxes.push_back({std::min({a.y(), b.y(), c.y()}), std::max({a.y(), b.y(), c.y()}),
                     std::min({a.z(), b.z(), c.z()}), std::max({a.z(), b.z(), c.z()})});
  }

  std::vector<double> hits;
  for (int k = 0; k < resolution; ++k) {
    for (int j = 0; j < resolution; ++j) {
      const Vec3 row_center = grid.cell_center(0, j, k);
      const double y = row_center.y() + kJitterY;
      const double z = row_center.z() + kJitterZ;
      hits.clear();
      for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
        const YzBox& box = boxes[f];
        if (y < box.y_lo || y > box.y_hi || z < box.z_lo || z > box.z_hi) continue;
        const Vec3& a = mesh.vertices[mesh.faces[f][0]];
        const Vec3& b = mesh.vertices[mesh.faces[f][1]];
        const Vec3& c = mesh.vertices[mesh.faces[f][2]];
        // Barycentric coordinates of (y, z) in the triangle's yz projection.
        const double det = (b.y() - a.y()) * (c.z() - a.z()) - (c.y() - a.y()) * (b.z() - a.z());
        if (det == 0.0) continue;
        const double u = ((y - a.y()) * (c.z() - a.z()) - (c.y() - a.y()) * (z - a.z())) / det;
        const double v = ((b.y() - a.y()) * (z - a.z()) - (y - a.y()) * (b.z() - a.z())) / det;
        if (u < 0.0 || v < 0.0 || u + v > 1.0) continue;
        hits.push_back(a.x() + u * (b.x() - a.x()) + v * (c.x() - a.x()));
      }
      std::sort(hits.begin(), hits.end());
      for (int i = 0; i < resolution; ++i) {
        const double x = grid.cell_center(i, j, k).x();
        const auto beyond = hits.end() - std::upper_bound(hits.begin(), hits.end(), x);
        grid.occupancy[grid.index(i, j, k)] = (beyond % 2 == 1) ? 1 : 0;
      }
    }
  }
  return grid;
}

double iou_3d(const VoxelGrid& a, const VoxelGrid& b) {
  if (a.resolution != b.resolution || a.bounds.lo != b.bounds.lo || a.bounds.hi != b.bounds.hi ||
      a.occupancy.size() != b.occupancy.size()) {
    throw ValidationError("iou_3d: grids differ in resolution or bounds");
  }
  std::size_t inter = 0;
  std::size_t uni = 0;
  for (std::size_t i = 0; i < a.occupancy.size(); ++i) {
    inter += a.occupancy[i] & b.occupancy[i];
    uni += a.occupancy[i] | b.occupancy[i];
  }
  if (uni == 0) return 1.0;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

}  // namespace softras
