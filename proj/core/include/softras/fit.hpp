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

#include <functional>
#include <optional>
#include <vector>

#include "softras/adam.hpp"
#include "softras/camera.hpp"
#include "softras/image.hpp"
#include "softras/losses.hpp"
#include "softras/mesh.hpp"
#include "softras/soft_raster.hpp"

namespace softras {

// Radius of the default fitting template. With the default camera a sphere of
// this radius covers roughly the central half of the frame.
inline constexpr double kDefaultTemplateRadius = 0.375;

/// The 642-vertex fitting template: icosphere(3, radius).
Mesh sphere_template(double radius = kDefaultTemplateRadius);

/// From `iteration` onward the rasterizer uses `sigma`.
struct SigmaStep {
  int iteration = 0;
  double sigma = kDefaultSigma;
};

struct FitConfig {
  double sigma = kDefaultSigma;
  LossWeights weights{};
  AdamParams adam{};
  int iterations = 2000;
  std::vector<SigmaStep> sigma_schedule;  // empty: fixed sigma
  bool color_enabled = false;
  // Rasterize with face truncation; see RasterOptions::truncate.
  bool truncate = true;
  // Worker threads for per-view rendering. Results do not depend on it.
  int threads = 1;

  double sigma_at(int iteration) const;
};

void validate(const FitConfig& config);

/// One supervising view: a camera, its target silhouette and, for color
/// fitting, its target RGB image.
struct View {
  Camera camera;
  BinaryMask mask;
  std::optional<ColorImage> color;
};

struct ViewSet {
  std::vector<View> views;
};

void validate(const ViewSet& views);

struct FitResult {
  Mesh mesh;
  std::vector<LossReport> history;  // one entry per iteration, before its update
};

using FitObserver = std::function<void(int iteration, const LossReport& report)>;

/// Optimizes a per-vertex displacement field (and, when enabled, per-vertex
/// colors) added to `template_mesh` so that its soft silhouettes match every
/// view. Each iteration averages the IoU loss over all views, adds the
/// regularizers once, and takes one Adam step.
FitResult fit(const Mesh& template_mesh, const ViewSet& views, const FitConfig& config,
              const FitObserver& observer = {});

struct ViewIou {
  std::vector<double> per_view;
  double mean = 0.0;
};

/// IoU between the hard silhouette of `mesh` and each view's target mask.
ViewIou evaluate_2d_iou(const Mesh& mesh, const ViewSet& views);

}  // namespace softras
