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

#include <gtest/gtest.h>

#include <cstring>
#include <string>

#include "softras/error.hpp"
#include "softras/fit.hpp"
#include "softras/shapes.hpp"

namespace softras {
namespace {

ViewSet views_of(const Mesh& target, const std::vector<Camera>& cameras) {
  ViewSet set;
  for (const Camera& cam : cameras) set.views.push_back({cam, render_hard(target, cam), std::nullopt});
  return set;
}

std::vector<Camera> ring(int size, int stride = 1) {
  std::vector<Camera> out;
  const auto all = make_view_set(ViewSetKind::kRing24, size);
  for (std::size_t i = 0; i < all.size(); i += stride) out.push_back(all[i]);
  return out;
}

bool same_history(const std::vector<LossReport>& a, const std::vector<LossReport>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::memcmp(&a[i].total, &b[i].total, sizeof(double)) != 0 || a[i].iou != b[i].iou ||
        a[i].laplacian != b[i].laplacian || a[i].flattening != b[i].flattening) {
      return false;
    }
  }
  return true;
}

TEST(Fit, ZeroIterationsReturnsTemplate) {
  const Mesh tmpl = sphere_template();
  FitConfig cfg;
  cfg.iterations = 0;
  const FitResult r = fit(tmpl, views_of(ellipsoid({0.5, 0.35, 0.25}, 3), ring(32, 4)), cfg);
  EXPECT_TRUE(r.history.empty());
  ASSERT_EQ(r.mesh.num_vertices(), tmpl.num_vertices());
  for (std::size_t i = 0; i < tmpl.num_vertices(); ++i) EXPECT_EQ(r.mesh.vertices[i], tmpl.vertices[i]);
  EXPECT_EQ(r.mesh.faces, tmpl.faces);
}

TEST(Fit, TemplateAsTargetDoesNotGetWorse) {
  const Mesh tmpl = sphere_template();
  FitConfig cfg;
  cfg.iterations = 30;
  const FitResult r = fit(tmpl, views_of(tmpl, ring(32, 2)), cfg);
  ASSERT_EQ(r.history.size(), 30u);
  for (int i = 1; i < 10; ++i) EXPECT_LE(r.history[i].total, r.history[i - 1].total) << i;
  EXPECT_LE(r.history.back().total, r.history.front().total);
}

TEST(Fit, DeterministicAcrossRunsAndThreadCounts) {
  const Mesh tmpl = sphere_template();
  const ViewSet views = views_of(ellipsoid({0.5, 0.35, 0.25}, 3), ring(32, 3));
  FitConfig cfg;
  cfg.iterations = 15;
  const FitResult a = fit(tmpl, views, cfg);
  const FitResult b = fit(tmpl, views, cfg);
  cfg.threads = 3;
  const FitResult c = fit(tmpl, views, cfg);
  EXPECT_TRUE(same_history(a.history, b.history));
  EXPECT_TRUE(same_history(a.history, c.history));
  for (std::size_t i = 0; i < tmpl.num_vertices(); ++i) {
    EXPECT_EQ(a.mesh.vertices[i], c.mesh.vertices[i]);
  }
}

TEST(Fit, SingleViewWithoutRegularizersMostlyDescends) {
  const Mesh tmpl = sphere_template();
  FitConfig cfg;
  cfg.iterations = 400;
  cfg.weights = LossWeights{0.0, 0.0};
  const FitResult r = fit(tmpl, views_of(ellipsoid({0.5, 0.35, 0.25}, 3), {Camera{40, 30}}), cfg);
  const int window = 50;
  int good = 0, total = 0;
  for (std::size_t start = 0; start + window < r.history.size(); ++start, ++total) {
    good += r.history[start + window].total <= r.history[start].total;
  }
  EXPECT_GE(static_cast<double>(good) / total, 0.9) << good << "/" << total;
}

TEST(Fit, ObserverSeesEveryIteration) {
  FitConfig cfg;
  cfg.iterations = 3;
  std::vector<int> seen;
  const FitResult r = fit(sphere_template(), views_of(box({0.6, 0.6, 0.6}), ring(32, 8)), cfg,
                          [&](int it, const LossReport& rep) {
                            seen.push_back(it);
                            EXPECT_TRUE(std::isfinite(rep.total));
                          });
  EXPECT_EQ(seen, (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(r.history.size(), 3u);
}

TEST(Fit, ColorFittingReducesColorLossAndStaysInRange) {
  Mesh target = sphere_template();
  target.colors.emplace();
  for (const Vec3& v : target.vertices) {
    target.colors->push_back(Vec3(v.x() > 0 ? 0.9 : 0.1, 0.5 + v.y(), 0.3));
  }
  ViewSet views;
  const RasterOptions opts{Sharpness{1e-4}, true};
  for (const Camera& cam : ring(32, 6)) {
    views.views.push_back({cam, render_hard(target, cam), render_color(target, cam, opts)});
  }
  FitConfig cfg;
  cfg.iterations = 60;
  cfg.sigma = 1e-4;
  cfg.color_enabled = true;
  cfg.adam.alpha = 0.02;
  const FitResult r = fit(sphere_template(), views, cfg);
  ASSERT_TRUE(r.history.front().color.has_value());
  EXPECT_LT(*r.history.back().color, 0.5 * *r.history.front().color);
  ASSERT_TRUE(r.mesh.colors.has_value());
  for (const Vec3& c : *r.mesh.colors) {
    EXPECT_GE(c.minCoeff(), 0.0);
    EXPECT_LE(c.maxCoeff(), 1.0);
  }
}

TEST(Fit, ColorFittingNeedsTargets) {
  FitConfig cfg;
  cfg.iterations = 1;
  cfg.color_enabled = true;
  EXPECT_THROW(fit(sphere_template(), views_of(sphere_template(), ring(32, 12)), cfg), ValidationError);
}

TEST(Fit, ProjectionFailureNamesIterationAndView) {
  auto cams = ring(32, 12);
  cams[1].distance = 0.3;
  ViewSet views = views_of(sphere_template(0.05), cams);
  FitConfig cfg;
  cfg.iterations = 2;
  try {
    fit(sphere_template(), views, cfg);
    FAIL() << "expected ProjectionError";
  } catch (const ProjectionError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("iteration 0"), std::string::npos) << msg;
    EXPECT_NE(msg.find("view 1"), std::string::npos) << msg;
  }
}

TEST(FitConfig, Validation) {
  FitConfig cfg;
  EXPECT_NO_THROW(validate(cfg));
  cfg.sigma_schedule = {{0, 1e-3}, {100, 1e-4}, {100, 3e-5}};
  EXPECT_THROW(validate(cfg), ValidationError);
  cfg.sigma_schedule = {{10, 1e-3}, {100, 1e-4}};
  EXPECT_NO_THROW(validate(cfg));
  EXPECT_EQ(cfg.sigma_at(0), kDefaultSigma);
  EXPECT_EQ(cfg.sigma_at(10), 1e-3);
  EXPECT_EQ(cfg.sigma_at(99), 1e-3);
  EXPECT_EQ(cfg.sigma_at(5000), 1e-4);
  cfg.adam.beta1 = 1.0;
  EXPECT_THROW(validate(cfg), ValidationError);
  FitConfig neg;
  neg.sigma = -1;
  EXPECT_THROW(validate(neg), ValidationError);
}

TEST(ViewSet, Validation) {
  ViewSet empty;
  EXPECT_THROW(validate(empty), ValidationError);
  ViewSet bad = views_of(sphere_template(), ring(32, 12));
  bad.views[1].mask = BinaryMask(16, 16);
  EXPECT_THROW(validate(bad), ValidationError);
}

TEST(Evaluate2dIou, Examples) {
  const Mesh m = sphere_template();
  const ViewSet self = views_of(m, ring(32, 4));
  const ViewIou same = evaluate_2d_iou(m, self);
  for (double v : same.per_view) EXPECT_EQ(v, 1.0);
  EXPECT_EQ(same.mean, 1.0);

  ViewSet blank = self;
  for (View& v : blank.views) v.mask = BinaryMask(32, 32);
  EXPECT_EQ(evaluate_2d_iou(m, blank).mean, 0.0);

  // A large quad in front of the camera fills the frame; the target fills the
  // top half of it.
  Mesh quad;
  quad.vertices = {Vec3(-5, -5, 0), Vec3(5, -5, 0), Vec3(5, 5, 0), Vec3(-5, 5, 0)};
  quad.faces = {{0, 1, 2}, {0, 2, 3}};
  const Camera cam{0, 0, 2.732, 30, 32, 32};
  BinaryMask half(32, 32);
  for (int r = 0; r < 16; ++r) {
    for (int c = 0; c < 32; ++c) half.values[r * 32 + c] = 1;
  }
  ViewSet halves;
  halves.views.push_back({cam, half, std::nullopt});
  EXPECT_DOUBLE_EQ(evaluate_2d_iou(quad, halves).mean, 0.5);
}

}  // namespace
}  // namespace softras
