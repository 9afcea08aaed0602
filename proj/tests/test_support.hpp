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

// Reference computations shared by tests. Nothing here calls into the code
// paths it is used to check.

#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace softras::testing {

/// Minimum distance from p to the closed edges of a triangle, by sampling
/// `samples` evenly spaced points along each edge.
inline double brute_force_edge_distance(const Eigen::Vector2d& p,
                                        const std::array<Eigen::Vector2d, 3>& tri,
                                        int samples = 100000) {
  double best = std::numeric_limits<double>::infinity();
  for (int e = 0; e < 3; ++e) {
    const Eigen::Vector2d a = tri[e];
    const Eigen::Vector2d b = tri[(e + 1) % 3];
    for (int k = 0; k <= samples; ++k) {
      const double t = static_cast<double>(k) / samples;
      best = std::min(best, (p - (a + t * (b - a))).norm());
    }
  }
  return best;
}

/// Central differences of a scalar function of a parameter vector.
inline std::vector<double> central_differences(
    std::vector<double> x, const std::function<double(const std::vector<double>&)>& f,
    double h) {
  std::vector<double> grad(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double saved = x[i];
    x[i] = saved + h;
    const double plus = f(x);
    x[i] = saved - h;
    const double minus = f(x);
    x[i] = saved;
    grad[i] = (plus - minus) / (2.0 * h);
  }
  return grad;
}

/// |a - b| / max(|a|, |b|) over whole vectors.
inline double relative_error(const std::vector<double>& a, const std::vector<double>& b) {
  double diff = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    diff += (a[i] - b[i]) * (a[i] - b[i]);
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  const double scale = std::sqrt(std::max(na, nb));
  return scale > 0.0 ? std::sqrt(diff) / scale : 0.0;
}

/// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("softras_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace softras::testing
