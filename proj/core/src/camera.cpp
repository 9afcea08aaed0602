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

#include "softras/camera.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "softras/error.hpp"

namespace softras {
namespace {

double radians(double degrees) { return degrees * std::numbers::pi / 180.0; }

struct Intrinsics {
  double tan_half_fov;
  double aspect;
};

Intrinsics intrinsics(const Camera& camera) {
  return {std::tan(radians(camera.fov_y) / 2.0),
          static_cast<double>(camera.width) / static_cast<double>(camera.height)};
}

}  // namespace

void validate(const Camera& camera) {
  if (!(camera.fov_y > 0.0 && camera.fov_y < 180.0)) {
    throw ValidationError("camera fov_y must lie in (0, 180) degrees");
  }
  if (!(camera.distance > 0.0) || !std::isfinite(camera.distance)) {
    throw ValidationError("camera distance must be positive");
  }
  if (camera.width < 1 || camera.height < 1) {
    throw ValidationError("camera image size must be at least 1x1");
  }
  if (!std::isfinite(camera.azimuth) || !std::isfinite(camera.elevation)) {
    throw ValidationError("camera angles must be finite");
  }
}

Vec3 camera_position(const Camera& camera) {
  const double a = radians(camera.azimuth);
  const double e = radians(camera.elevation);
  return camera.distance *
         Vec3(std::cos(e) * std::sin(a), std::sin(e), std::cos(e) * std::cos(a));
}

ViewFrame view_frame(const Camera& camera) {
  ViewFrame frame;
  frame.eye = camera_position(camera);
  frame.forward = (-frame.eye).normalized();
  Vec3 right = frame.forward.cross(Vec3::UnitY());
  if (right.norm() < 1e-12) {
    // Pole: world up is parallel to the viewing direction.
    right = frame.forward.cross(-Vec3::UnitZ());
  }
  frame.right = right.normalized();
  frame.up = frame.right.cross(frame.forward);
  return frame;
}

ProjectedMesh project(const Mesh& mesh, const Camera& camera) {
  validate(camera);
  const ViewFrame frame = view_frame(camera);
  const Intrinsics k = intrinsics(camera);
  ProjectedMesh out;
  out.screen_xy.resize(mesh.vertices.size());
  out.cam_z.resize(mesh.vertices.size());
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
    const Vec3 rel = mesh.vertices[i] - frame.eye;
    const double z = rel.dot(frame.forward);
    if (!(z > kNearPlane)) {
      throw ProjectionError(i, "vertex " + std::to_string(i) +
                                   " lies on or behind the near plane (depth " +
                                   std::to_string(z) + ")");
    }
    out.cam_z[i] = z;
    out.screen_xy[i] = Vec2(rel.dot(frame.right) / (z * k.tan_half_fov * k.aspect),
                            rel.dot(frame.up) / (z * k.tan_half_fov));
  }
  return out;
}

Eigen::Matrix<double, 2, 3> projection_jacobian(const Camera& camera, const Vec3& world) {
  const ViewFrame frame = view_frame(camera);
  const Intrinsics k = intrinsics(camera);
  const Vec3 rel = world - frame.eye;
  const double z = rel.dot(frame.forward);
  const double x = rel.dot(frame.right);
  const double y = rel.dot(frame.up);
  const double sx = 1.0 / (k.tan_half_fov * k.aspect);
  const double sy = 1.0 / k.tan_half_fov;
  Eigen::Matrix<double, 2, 3> j;
  j.row(0) = sx * (frame.right / z - (x / (z * z)) * frame.forward).transpose();
  j.row(1) = sy * (frame.up / z - (y / (z * z)) * frame.forward).transpose();
  return j;
}

ViewSetKind parse_view_set(std::string_view name) {
  if (name == "ring24") return ViewSetKind::kRing24;
  if (name == "grid120") return ViewSetKind::kGrid120;
  throw ValidationError("unknown view set '" + std::string(name) +
                        "' (expected ring24 or grid120)");
}

std::vector<Camera> make_view_set(ViewSetKind kind, int image_size, double distance,
                                  double fov_y) {
  std::vector<double> elevations;
  if (kind == ViewSetKind::kRing24) {
    elevations = {30.0};
  } else {
    elevations = {-30.0, -15.0, 0.0, 15.0, 30.0};
  }
  std::vector<Camera> cameras;
  for (double elevation : elevations) {
    for (int k = 0; k < 24; ++k) {
      Camera cam{15.0 * k, elevation, distance, fov_y, image_size, image_size};
      validate(cam);
      cameras.push_back(cam);
    }
  }
  return cameras;
}

}  // namespace softras
