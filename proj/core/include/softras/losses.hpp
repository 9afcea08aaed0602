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

#include <optional>
#include <vector>

#include "softras/image.hpp"
#include "softras/mesh.hpp"

namespace softras {

/// Weights of the Laplacian and flattening regularizers in the total loss.
struct LossWeights {
  double lambda = 0.01;
  double mu = 0.001;
};

void validate(const LossWeights& weights);

/// Loss over an image plus its gradient with respect to each pixel value
/// (one entry per pixel for silhouettes, three per pixel for RGB).
struct ImageLoss {
  double value = 0.0;
  std::vector<double> grad;
  // Set when both images are empty and the loss is defined as zero.
  bool degenerate = false;
};

/// Loss over a mesh plus its gradient with respect to each vertex.
struct VertexLoss {
  double value = 0.0;
  std::vector<Vec3> grad;
};

/// 1 - sum(S*T) / sum(S + T - S*T), with T held constant.
ImageLoss iou_loss(const SoftSilhouette& soft, const BinaryMask& target);

/// sum_i |v_i - mean_{j in N(i)} v_j|^2. Throws on isolated vertices.
VertexLoss laplacian_loss(const Mesh& mesh, const VertexAdjacency& adjacency);

/// sum over interior edges of (cos theta + 1)^2 where cos theta = -n_left . n_right,
/// so coplanar, consistently wound faces contribute zero. Throws on degenerate
/// incident faces.
VertexLoss flattening_loss(const Mesh& mesh, const EdgeAdjacency& edges);

/// Mean squared error over pixels and channels.
ImageLoss color_l2_loss(const ColorImage& rendered, const ColorImage& target);

struct LossComponents {
  double iou = 0.0;
  double laplacian = 0.0;
  double flattening = 0.0;
  std::optional<double> color;
};

struct LossReport {
  double iou = 0.0;
  double laplacian = 0.0;
  double flattening = 0.0;
  std::optional<double> color;
  double total = 0.0;
};

/// iou + lambda * laplacian + mu * flattening (+ color when present).
/// Throws NumericError on non-finite components.
LossReport total_loss(const LossComponents& components, const LossWeights& weights);

}  // namespace softras
