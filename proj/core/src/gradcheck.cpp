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

#include "softras/gradcheck.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "softras/error.hpp"
#include "softras/soft_raster.hpp"

namespace softras {
namespace {

constexpr double kMinBoundaryDistance = 0.02;
constexpr double kMinTieGap = 0.02;
constexpr double kMinScreenArea = 0.01;

double screen_area(const Triangle2& t) {
  const Vec2 e1 = t[1] - t[0];
  const Vec2 e2 = t[2] - t[0];
  return 0.5 * std::abs(e1.x() * e2.y() - e1.y() * e2.x());
}

// Distances from p to each of the three edges, sorted ascending.
std::array<double, 3> edge_distances(const Vec2& p, const Triangle2& tri) {
  std::array<double, 3> d{};
  for (int e = 0; e < 3; ++e) {
    const Vec2& a = tri[e];
    const Vec2 ab = tri[(e + 1) % 3] - a;
    const double t = std::clamp((p - a).dot(ab) / ab.squaredNorm(), 0.0, 1.0);
    d[e] = (p - (a + t * ab)).norm();
  }
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace

std::vector<GradcheckCase> random_gradcheck_cases(int count, std::uint64_t seed,
                                                  int image_size) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-0.45, 0.45);
  std::uniform_real_distribution<double> azimuth(0.0, 360.0);
  std::uniform_real_distribution<double> elevation(-60.0, 60.0);
  std::uniform_real_distribution<double> log_ratio(std::log(0.05), std::log(5.0));
  std::uniform_int_distribution<int> pixel(0, image_size * image_size - 1);

  std::vector<GradcheckCase> cases;
  while (static_cast<int>(cases.size()) < count) {
    GradcheckCase c;
    c.mesh.vertices = {Vec3(coord(rng), coord(rng), coord(rng)),
                       Vec3(coord(rng), coord(rng), coord(rng)),
                       Vec3(coord(rng), coord(rng), coord(rng))};
    c.mesh.faces = {{0, 1, 2}};
    c.camera = Camera{azimuth(rng), elevation(rng), kDefaultDistance, kDefaultFovY,
                      image_size, image_size};
    c.pixel = pixel(rng);

    const ProjectedMesh proj = project(c.mesh, c.camera);
    const Triangle2 tri{proj.screen_xy[0], proj.screen_xy[1], proj.screen_xy[2]};
    if (screen_area(tri) < kMinScreenArea) continue;
    const Vec2 p = pixel_center(c.pixel / image_size, c.pixel % image_size, image_size,
                                image_size);
    const auto d = edge_distances(p, tri);
    if (d[0] < kMinBoundaryDistance || d[1] - d[0] < kMinTieGap) continue;
    c.sigma = d[0] * d[0] / std::exp(log_ratio(rng));
    cases.push_back(std::move(c));
  }
  return cases;
}

GradcheckTrial check_gradient(const GradcheckCase& config, double step) {
  GradcheckTrial trial;
  trial.config = config;
  const RasterOptions options{Sharpness{config.sigma}, false};
  const auto pixels = std::size_t(config.camera.width) * config.camera.height;

  std::vector<double> upstream(pixels, 0.0);
  upstream[config.pixel] = 1.0;
  const GradientBuffer grad = backward_soft(config.mesh, config.camera, options, upstream);

  Mesh probe = config.mesh;
  for (std::size_t v = 0; v < probe.vertices.size(); ++v) {
    for (int c = 0; c < 3; ++c) {
      trial.analytic.push_back(grad.d_vertices[v][c]);
      const double saved = probe.vertices[v][c];
      probe.vertices[v][c] = saved + step;
      const double plus = render_soft(probe, config.camera, options).values[config.pixel];
      probe.vertices[v][c] = saved - step;
      const double minus = render_soft(probe, config.camera, options).values[config.pixel];
      probe.vertices[v][c] = saved;
      trial.numerical.push_back((plus - minus) / (2.0 * step));
    }
  }

  double diff2 = 0.0, a2 = 0.0, n2 = 0.0;
  for (std::size_t k = 0; k < trial.analytic.size(); ++k) {
    const double d = trial.analytic[k] - trial.numerical[k];
    diff2 += d * d;
    a2 += trial.analytic[k] * trial.analytic[k];
    n2 += trial.numerical[k] * trial.numerical[k];
  }
  const double scale = std::sqrt(std::max(a2, n2));
  trial.rel_error = scale > 0.0 ? std::sqrt(diff2) / scale : 0.0;
  return trial;
}

GradcheckReport run_gradcheck(const GradcheckOptions& options) {
  if (options.trials < 0) throw ValidationError("gradcheck trial count must be non-negative");
  if (!(options.step > 0.0)) throw ValidationError("gradcheck step must be positive");
  GradcheckReport report;
  for (const GradcheckCase& c :
       random_gradcheck_cases(options.trials, options.seed, options.image_size)) {
    report.trials.push_back(check_gradient(c, options.step));
    report.max_rel_error = std::max(report.max_rel_error, report.trials.back().rel_error);
  }
  return report;
}

}  // namespace softras
