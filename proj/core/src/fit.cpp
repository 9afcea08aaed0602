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

#include "softras/fit.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>
#include <thread>

#include "softras/error.hpp"

namespace softras {
namespace {

struct ViewTerms {
  double iou = 0.0;
  double color = 0.0;
  GradientBuffer grad;
  GradientBuffer color_grad;
};

ViewTerms evaluate_view(const Mesh& mesh, const View& view, const RasterOptions& options,
                        bool with_color) {
  ViewTerms out;
  const SoftRasterizer raster(mesh, view.camera, options);
  const ImageLoss iou = iou_loss(raster.silhouette(), view.mask);
  out.iou = iou.value;
  out.grad = raster.backward(iou.grad);
  if (with_color) {
    const ImageLoss l2 = color_l2_loss(raster.color(), *view.color);
    out.color = l2.value;
    out.color_grad = raster.backward_color(l2.grad);
  }
  return out;
}

// Evaluates every view, spreading them over `threads` workers. Results land in
// view order so the caller's reduction is independent of scheduling.
std::vector<ViewTerms> evaluate_views(const Mesh& mesh, const ViewSet& views,
                                      const RasterOptions& options, bool with_color,
                                      int threads, int iteration) {
  const std::size_t n = views.views.size();
  std::vector<ViewTerms> results(n);
  std::vector<std::exception_ptr> errors(n);
  auto work = [&](std::size_t first, std::size_t stride) {
    for (std::size_t v = first; v < n; v += stride) {
      try {
        results[v] = evaluate_view(mesh, views.views[v], options, with_color);
      } catch (...) {
        errors[v] = std::current_exception();
      }
    }
  };
  const std::size_t workers = std::clamp<std::size_t>(threads, 1, n);
  if (workers == 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t k = 0; k < workers; ++k) pool.emplace_back(work, k, workers);
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (!errors[v]) continue;
    try {
      std::rethrow_exception(errors[v]);
    } catch (const ProjectionError& e) {
      throw ProjectionError(e.vertex(), "iteration " + std::to_string(iteration) + ", view " +
                                            std::to_string(v) + ": " + e.what());
    }
  }
  return results;
}

}  // namespace

Mesh sphere_template(double radius) { return icosphere(3, radius); }

double FitConfig::sigma_at(int iteration) const {
  double s = sigma;
  for (const SigmaStep& step : sigma_schedule) {
    if (step.iteration <= iteration) s = step.sigma;
  }
  return s;
}

void validate(const FitConfig& config) {
  Sharpness{config.sigma};
  validate(config.weights);
  validate(config.adam);
  if (config.iterations < 0) throw ValidationError("iteration count must be non-negative");
  for (std::size_t i = 0; i < config.sigma_schedule.size(); ++i) {
    Sharpness{config.sigma_schedule[i].sigma};
    if (i > 0 && config.sigma_schedule[i].iteration <= config.sigma_schedule[i - 1].iteration) {
      throw ValidationError("sigma schedule iterations must be strictly increasing");
    }
  }
}

void validate(const ViewSet& views) {
  if (views.views.empty()) throw ValidationError("view set is empty");
  for (std::size_t v = 0; v < views.views.size(); ++v) {
    const View& view = views.views[v];
    validate(view.camera);
    if (view.mask.width != view.camera.width || view.mask.height != view.camera.height) {
      throw ValidationError("view " + std::to_string(v) +
                            ": target mask size does not match the camera");
    }
    if (view.color && (view.color->width != view.camera.width ||
                       view.color->height != view.camera.height)) {
      throw ValidationError("view " + std::to_string(v) +
                            ": target color size does not match the camera");
    }
  }
}

FitResult fit(const Mesh& template_mesh, const ViewSet& views, const FitConfig& config,
              const FitObserver& observer) {
  validate(template_mesh);
  validate(views);
  validate(config);
  if (config.color_enabled) {
    for (std::size_t v = 0; v < views.views.size(); ++v) {
      if (!views.views[v].color) {
        throw ValidationError("color fitting needs a target image for view " + std::to_string(v));
      }
    }
  }

  const std::size_t n = template_mesh.vertices.size();
  const VertexAdjacency adjacency = vertex_adjacency(template_mesh);
  const EdgeAdjacency edges = edge_adjacency(template_mesh);

  FitResult result;
  result.mesh = template_mesh;
  Mesh& mesh = result.mesh;
  if (config.color_enabled && !mesh.colors) mesh.colors.emplace(n, Vec3::Constant(0.5));

  // Parameters: displacement (3n) followed by colors (3n) when enabled. The
  // displacement starts at zero, so the mesh is exactly the template until the
  // first step.
  const std::size_t color_offset = 3 * n;
  std::vector<double> params(config.color_enabled ? 6 * n : 3 * n, 0.0);
  if (config.color_enabled) {
    for (std::size_t i = 0; i < n; ++i) {
      for (int c = 0; c < 3; ++c) params[color_offset + 3 * i + c] = (*mesh.colors)[i][c];
    }
  }
  std::vector<double> grads(params.size());
  AdamState state(params.size());
  const double inv_views = 1.0 / static_cast<double>(views.views.size());

  for (int it = 0; it < config.iterations; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      mesh.vertices[i] = template_mesh.vertices[i] +
                         Vec3(params[3 * i], params[3 * i + 1], params[3 * i + 2]);
      if (config.color_enabled) {
        (*mesh.colors)[i] = Vec3(params[color_offset + 3 * i], params[color_offset + 3 * i + 1],
                                 params[color_offset + 3 * i + 2]);
      }
    }

    RasterOptions options{Sharpness{config.sigma_at(it)}, config.truncate};
    const std::vector<ViewTerms> terms =
        evaluate_views(mesh, views, options, config.color_enabled, config.threads, it);

    std::fill(grads.begin(), grads.end(), 0.0);
    LossComponents comp;
    double color_sum = 0.0;
    for (const ViewTerms& t : terms) {
      comp.iou += t.iou;
      color_sum += t.color;
      for (std::size_t i = 0; i < n; ++i) {
        for (int c = 0; c < 3; ++c) grads[3 * i + c] += t.grad.d_vertices[i][c];
      }
      if (config.color_enabled) {
        for (std::size_t i = 0; i < n; ++i) {
          for (int c = 0; c < 3; ++c) {
            grads[color_offset + 3 * i + c] += (*t.color_grad.d_colors)[i][c];
          }
        }
      }
    }
    comp.iou *= inv_views;
    for (double& g : grads) g *= inv_views;
    if (config.color_enabled) comp.color = color_sum * inv_views;

    const VertexLoss lap = laplacian_loss(mesh, adjacency);
    const VertexLoss flat = flattening_loss(mesh, edges);
    comp.laplacian = lap.value;
    comp.flattening = flat.value;
    LossReport report;
    try {
      report = total_loss(comp, config.weights);
    } catch (const NumericError& e) {
      throw NumericError("iteration " + std::to_string(it) + ": " + e.what());
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (int c = 0; c < 3; ++c) {
        grads[3 * i + c] +=
            config.weights.lambda * lap.grad[i][c] + config.weights.mu * flat.grad[i][c];
      }
    }
    result.history.push_back(report);
    if (observer) observer(it, report);

    try {
      adam_step(params, grads, state, config.adam);
    } catch (const NumericError& e) {
      throw NumericError("iteration " + std::to_string(it) + ": " + e.what());
    }
    if (config.color_enabled) {
      for (std::size_t k = color_offset; k < params.size(); ++k) {
        params[k] = std::clamp(params[k], 0.0, 1.0);
      }
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    mesh.vertices[i] =
        template_mesh.vertices[i] + Vec3(params[3 * i], params[3 * i + 1], params[3 * i + 2]);
    if (config.color_enabled) {
      (*mesh.colors)[i] = Vec3(params[color_offset + 3 * i], params[color_offset + 3 * i + 1],
                               params[color_offset + 3 * i + 2]);
    }
  }
  return result;
}

ViewIou evaluate_2d_iou(const Mesh& mesh, const ViewSet& views) {
  ViewIou out;
  for (const View& view : views.views) {
    out.per_view.push_back(mask_iou(render_hard(mesh, view.camera), view.mask));
    out.mean += out.per_view.back();
  }
  if (!out.per_view.empty()) out.mean /= static_cast<double>(out.per_view.size());
  return out;
}

}  // namespace softras
