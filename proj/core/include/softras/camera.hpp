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

#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "softras/mesh.hpp"

namespace softras {

inline constexpr double kDefaultDistance = 2.732;
inline constexpr double kDefaultFovY = 30.0;
inline constexpr int kDefaultImageSize = 64;
inline constexpr double kNearPlane = 0.1;

/// Orbit camera looking at the origin. Angles in degrees; `fov_y` is the full
/// vertical field of view.
struct Camera {
  double azimuth = 0.0;
  double elevation = 0.0;
  double distance = kDefaultDistance;
  double fov_y = kDefaultFovY;
  int width = kDefaultImageSize;
  int height = kDefaultImageSize;
};

void validate(const Camera& camera);

/// distance * (cos e sin a, sin e, cos e cos a).
Vec3 camera_position(const Camera& camera);

/// Orthonormal view frame. `forward` points from the eye to the origin; `up` is
/// world +y projected off `forward`, or -z when looking straight along y.
struct ViewFrame {
  Vec3 eye;
  Vec3 right;
  Vec3 up;
  Vec3 forward;
};

ViewFrame view_frame(const Camera& camera);

/// Vertices in normalized screen space: x right, y up, the frustum mapped to
/// [-1,1]^2. `cam_z` is the depth along the viewing axis.
struct ProjectedMesh {
  std::vector<Vec2> screen_xy;
  std::vector<double> cam_z;
};

/// Throws ProjectionError naming the first vertex with depth <= kNearPlane.
ProjectedMesh project(const Mesh& mesh, const Camera& camera);

/// d(screen_xy) / d(world position) for one vertex.
Eigen::Matrix<double, 2, 3> projection_jacobian(const Camera& camera, const Vec3& world);

/// Center of pixel (row, col) in normalized coordinates; row 0 is the top row.
inline Vec2 pixel_center(int row, int col, int width, int height) {
  return {(2.0 * col + 1.0) / width - 1.0, 1.0 - (2.0 * row + 1.0) / height};
}

enum class ViewSetKind { kRing24, kGrid120 };

/// Parses "ring24" or "grid120"; throws ValidationError otherwise.
ViewSetKind parse_view_set(std::string_view name);

/// ring24: elevation 30, azimuth 0..345 step 15. grid120: elevations
/// {-30,-15,0,15,30} each with the same 24 azimuths, elevation-major.
std::vector<Camera> make_view_set(ViewSetKind kind, int image_size = kDefaultImageSize,
                                  double distance = kDefaultDistance,
                                  double fov_y = kDefaultFovY);

}  // namespace softras
