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

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "softras/camera.hpp"
#include "softras/image.hpp"
#include "softras/mesh.hpp"

namespace softras {

inline constexpr double kDefaultSigma = 3e-5;

// Probability below which a face is dropped in truncation mode.
inline constexpr double kTruncationEpsilon = 1e-7;

// Added to the denominator of the color compositing weights.
inline constexpr double kColorEpsilon = 1e-8;

// Projected triangles with |area| below this are treated as having no inside.
inline constexpr double kDegenerateArea = 1e-12;

/// Sharpness of the per-face probability falloff. Always positive.
class Sharpness {
 public:
  explicit Sharpness(double sigma = kDefaultSigma);
  double value() const noexcept { return sigma_; }

 private:
  double sigma_;
};

struct RasterOptions {
  Sharpness sigma{};
  // Skip faces whose dilated screen bounding box misses the pixel, i.e. whose
  // probability there is provably below kTruncationEpsilon. Changes the image
  // by at most that much per face but drops long-range gradients.
  bool truncate = false;
};

using Triangle2 = std::array<Vec2, 3>;

/// +1 if p is inside the triangle or on its boundary (either winding), else -1.
/// Degenerate triangles have no inside.
int point_in_triangle(const Vec2& p, const Triangle2& tri);

/// Closest point of the triangle boundary: on edge `edge` (from vertex `edge`
/// to vertex `(edge + 1) % 3`) at parameter `t` in [0,1]. Ties go to the lower
/// edge index.
struct EdgeProjection {
  double dist2 = 0.0;
  int edge = 0;
  double t = 0.0;
};

EdgeProjection closest_edge(const Vec2& p, const Triangle2& tri);

/// Euclidean distance from p to the three closed edge segments.
double distance_to_triangle(const Vec2& p, const Triangle2& tri);

/// Overflow-free logistic function.
double sigmoid(double x);

/// log(1 + exp(x)) without overflow; equals -log(1 - sigmoid(x)).
double softplus(double x);

/// sigmoid(delta * d^2 / sigma): the probability that `tri` covers `p`.
double face_probability(const Vec2& p, const Triangle2& tri, Sharpness sigma);

/// Per-vertex derivatives of a scalar loss.
struct GradientBuffer {
  std::vector<Vec3> d_vertices;
  std::optional<std::vector<Vec3>> d_colors;
};

/// Projects the mesh once and renders any number of forward and backward
/// passes against that projection. Every per-pixel loop visits faces in
/// ascending index order and every per-vertex reduction follows ascending face
/// order, so results do not depend on how callers schedule instances.
class SoftRasterizer {
 public:
  SoftRasterizer(const Mesh& mesh, const Camera& camera, RasterOptions options = {});

  /// 1 - prod_j (1 - D_j) per pixel, accumulated as a sum of log(1 - D_j).
  SoftSilhouette silhouette() const;

  /// Pixel centers inside any projected triangle.
  BinaryMask hard() const;

  /// Vertex gradient of sum_i upstream[i] * S_i.
  GradientBuffer backward(std::span<const double> upstream) const;

  /// sum_j D_j c_j / (sum_j D_j + eps), c_j the face color at the closest point.
  ColorImage color() const;

  /// Color gradient of sum upstream * color(); d_vertices is left zero.
  GradientBuffer backward_color(std::span<const double> upstream) const;

  const ProjectedMesh& projected() const { return projected_; }
  const Camera& camera() const { return camera_; }

 private:
  struct Fragment {
    int face;
    int sign;
    double x;  // sign * d^2 / sigma
    EdgeProjection edge;
  };

  template <typename Fn>
  void for_each_candidate(std::size_t pixel, Fn&& fn) const;
  void fragments(std::size_t pixel, std::vector<Fragment>& out) const;
  Triangle2 screen_triangle(int face) const;

  const Mesh& mesh_;
  Camera camera_;
  RasterOptions options_;
  ProjectedMesh projected_;
  // Truncation mode only: CSR lists of candidate faces per pixel.
  std::vector<std::size_t> bin_offsets_;
  std::vector<int> bin_faces_;
};

SoftSilhouette render_soft(const Mesh& mesh, const Camera& camera, RasterOptions options = {});

BinaryMask render_hard(const Mesh& mesh, const Camera& camera);

/// Throws NumericError on non-finite upstream and ValidationError on shape
/// mismatch.
GradientBuffer backward_soft(const Mesh& mesh, const Camera& camera, RasterOptions options,
                             std::span<const double> upstream);

ColorImage render_color(const Mesh& mesh, const Camera& camera, RasterOptions options = {});

GradientBuffer backward_color(const Mesh& mesh, const Camera& camera, RasterOptions options,
                              std::span<const double> upstream);

}  // namespace softras
