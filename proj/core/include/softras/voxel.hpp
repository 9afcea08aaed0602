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

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "softras/mesh.hpp"

namespace softras {

struct Bounds {
  Vec3 lo = Vec3::Zero();
  Vec3 hi = Vec3::Zero();
};

/// Occupancy of cell centers on a regular grid, x fastest.
struct VoxelGrid {
  int resolution = 0;
  Bounds bounds;
  std::vector<std::uint8_t> occupancy;

  std::size_t index(int i, int j, int k) const {
    return (std::size_t(k) * resolution + j) * resolution + i;
  }
  Vec3 cell_center(int i, int j, int k) const;
  std::size_t count() const;
};

/// Axis-aligned bounding box of the vertices.
Bounds mesh_bounds(const Mesh& mesh);

/// Union of both bounding boxes, scaled by (1 + margin) about its center.
Bounds evaluation_bounds(const Mesh& a, const Mesh& b, double margin = 0.05);

/// A cell is occupied when a +x ray from its (slightly jittered) center
/// crosses the mesh an odd number of times. Throws ValidationError on open or
/// non-manifold meshes, resolution < 2 or empty bounds.
VoxelGrid voxelize(const Mesh& mesh, int resolution, const Bounds& bounds);

/// |A and B| / |A or B|. Two empty grids give 1. Throws when the grids differ
/// in resolution or bounds.
double iou_3d(const VoxelGrid& a, const VoxelGrid& b);

}  // namespace softras
