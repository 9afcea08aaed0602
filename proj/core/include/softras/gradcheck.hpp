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

#include <cstdint>
#include <vector>

#include "softras/camera.hpp"
#include "softras/mesh.hpp"

namespace softras {

inline constexpr double kGradcheckTolerance = 1e-4;

struct GradcheckOptions {
  int trials = 100;
  std::uint64_t seed = 7;
  double step = 1e-4;  // central-difference step on world coordinates
  int image_size = 32;
};

/// One randomized configuration: a single world-space triangle seen by
/// `camera`, a single pixel carrying upstream gradient 1, and a sharpness.
struct GradcheckCase {
  Mesh mesh;
  Camera camera;
  int pixel = 0;
  double sigma = 0.0;
};

struct GradcheckTrial {
  GradcheckCase config;
  std::vector<double> analytic;   // 9 entries, xyz per vertex
  std::vector<double> numerical;  // same layout
  double rel_error = 0.0;         // |a - n| / max(|a|, |n|)
};

struct GradcheckReport {
  std::vector<GradcheckTrial> trials;
  double max_rel_error = 0.0;
  bool passed() const { return max_rel_error < kGradcheckTolerance; }
};

/// Draws configurations whose pixel is neither within 0.02 of the triangle
/// boundary nor near a closest-edge tie, with sigma set so |delta d^2 / sigma|
/// lies in [0.05, 5]. Deterministic for a given seed.
std::vector<GradcheckCase> random_gradcheck_cases(int count, std::uint64_t seed,
                                                  int image_size = 32);

/// Compares backward_soft against central differences of render_soft.
GradcheckTrial check_gradient(const GradcheckCase& config, double step = 1e-4);

GradcheckReport run_gradcheck(const GradcheckOptions& options = {});

}  // namespace softras
