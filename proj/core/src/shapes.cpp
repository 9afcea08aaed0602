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

#include "softras/shapes.hpp"

#include <cmath>
#include <numbers>

#include "softras/error.hpp"

namespace softras {

Mesh ellipsoid(const Vec3& semi_axes, int subdivisions) {
  if (!(semi_axes.minCoeff() > 0.0)) throw ValidationError("ellipsoid semi-axes must be positive");
  Mesh mesh = icosphere(subdivisions, 1.0);
  for (Vec3& v : mesh.vertices) v = v.cwiseProduct(semi_axes);
  return mesh;
}

Mesh box(const Vec3& extents, const Vec3& center) {
  if (!(extents.minCoeff() > 0.0)) throw ValidationError("box extents must be positive");
  const Vec3 h = extents / 2.0;
  Mesh mesh;
  for (int i = 0; i < 8; ++i) {
    mesh.vertices.emplace_back(center.x() + ((i & 1) ? h.x() : -h.x()),
                               center.y() + ((i & 2) ? h.y() : -h.y()),
                               center.z() + ((i & 4) ? h.z() : -h.z()));
  }
  mesh.faces = {
      {0, 4, 6}, {0, 6, 2},  // -x
      {1, 3, 7}, {1, 7, 5},  // +x
      {0, 1, 5}, {0, 5, 4},  // -y
      {2, 6, 7}, {2, 7, 3},  // +y
      {0, 2, 3}, {0, 3, 1},  // -z
      {4, 5, 7}, {4, 7, 6},  // +z
  };
  return mesh;
}

Mesh rotated_about_y(const Mesh& mesh, double degrees) {
  const double a = degrees * std::numbers::pi / 180.0;
  const double c = std::cos(a);
  const double s = std::sin(a);
  Mesh out = mesh;
  for (Vec3& v : out.vertices) {
    v = Vec3(c * v.x() + s * v.z(), v.y(), -s * v.x() + c * v.z());
  }
  return out;
}

}  // namespace softras
