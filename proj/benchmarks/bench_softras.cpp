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

#include <benchmark/benchmark.h>

#include <vector>

#include "softras/fit.hpp"
#include "softras/losses.hpp"
#include "softras/shapes.hpp"
#include "softras/soft_raster.hpp"
#include "softras/voxel.hpp"

namespace softras {
namespace {

RasterOptions options_for(const benchmark::State& state) {
  return RasterOptions{Sharpness{kDefaultSigma}, state.range(0) != 0};
}

// range(0): 0 = every face at every pixel, 1 = truncated.
void BM_SoftForward(benchmark::State& state) {
  const Mesh mesh = sphere_template();
  const Camera cam{30, 30};
  for (auto _ : state) benchmark::DoNotOptimize(render_soft(mesh, cam, options_for(state)));
}
BENCHMARK(BM_SoftForward)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_SoftForwardBackward(benchmark::State& state) {
  const Mesh mesh = sphere_template();
  const Camera cam{30, 30};
  const BinaryMask target = render_hard(ellipsoid({0.5, 0.35, 0.25}, 3), cam);
  for (auto _ : state) {
    const SoftRasterizer raster(mesh, cam, options_for(state));
    const ImageLoss loss = iou_loss(raster.silhouette(), target);
    benchmark::DoNotOptimize(raster.backward(loss.grad));
  }
}
BENCHMARK(BM_SoftForwardBackward)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_HardRaster(benchmark::State& state) {
  const Mesh mesh = sphere_template();
  for (auto _ : state) benchmark::DoNotOptimize(render_hard(mesh, Camera{30, 30}));
}
BENCHMARK(BM_HardRaster)->Unit(benchmark::kMicrosecond);

void BM_Regularizers(benchmark::State& state) {
  const Mesh mesh = sphere_template();
  const VertexAdjacency adj = vertex_adjacency(mesh);
  const EdgeAdjacency edges = edge_adjacency(mesh);
  for (auto _ : state) {
    benchmark::DoNotOptimize(laplacian_loss(mesh, adj));
    benchmark::DoNotOptimize(flattening_loss(mesh, edges));
  }
}
BENCHMARK(BM_Regularizers)->Unit(benchmark::kMicrosecond);

void BM_Voxelize(benchmark::State& state) {
  const Mesh mesh = sphere_template();
  const Bounds bounds = evaluation_bounds(mesh, mesh);
  for (auto _ : state) {
    benchmark::DoNotOptimize(voxelize(mesh, static_cast<int>(state.range(0)), bounds));
  }
}
BENCHMARK(BM_Voxelize)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_FitIteration(benchmark::State& state) {
  const Mesh target = ellipsoid({0.5, 0.35, 0.25}, 3);
  ViewSet views;
  for (const Camera& cam : make_view_set(ViewSetKind::kRing24)) {
    views.views.push_back({cam, render_hard(target, cam), std::nullopt});
  }
  FitConfig config;
  config.iterations = 1;
  const Mesh tmpl = sphere_template();
  for (auto _ : state) benchmark::DoNotOptimize(fit(tmpl, views, config));
}
BENCHMARK(BM_FitIteration)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace softras

BENCHMARK_MAIN();
