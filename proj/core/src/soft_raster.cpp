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

#include "softras/soft_raster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "softras/error.hpp"

namespace softras {
namespace {

double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

struct PixelRange {
  int row_begin, row_end, col_begin, col_end;  // half-open
  bool empty() const { return row_begin >= row_end || col_begin >= col_end; }
};

// Pixels whose centers may lie in [lo, hi] (normalized coordinates), widened by
// `margin_px` pixels on every side and clipped to the image.
PixelRange pixel_range(const Vec2& lo, const Vec2& hi, int width, int height, int margin_px) {
  const double col_lo = ((lo.x() + 1.0) * width - 1.0) / 2.0;
  const double col_hi = ((hi.x() + 1.0) * width - 1.0) / 2.0;
  const double row_lo = ((1.0 - hi.y()) * height - 1.0) / 2.0;
  const double row_hi = ((1.0 - lo.y()) * height - 1.0) / 2.0;
  auto clip = [](double v, int n) {
    return static_cast<int>(std::clamp(v, -1.0, static_cast<double>(n)));
  };
  PixelRange r;
  r.col_begin = std::max(0, clip(std::ceil(col_lo), width) - margin_px);
  r.col_end = std::min(width, clip(std::floor(col_hi), width) + margin_px + 1);
  r.row_begin = std::max(0, clip(std::ceil(row_lo), height) - margin_px);
  r.row_end = std::min(height, clip(std::floor(row_hi), height) + margin_px + 1);
  return r;
}

// Barycentric weights of the point that supplies a fragment's color: the pixel
// itself when inside, otherwise the closest boundary point.
std::array<double, 3> color_weights(const Vec2& p, const Triangle2& tri, int sign,
                                    const EdgeProjection& edge) {
  std::array<double, 3> w{0.0, 0.0, 0.0};
  if (sign > 0) {
    const double area2 = cross2(tri[1] - tri[0], tri[2] - tri[0]);
    w[0] = std::max(0.0, cross2(tri[1] - p, tri[2] - p) / area2);
    w[1] = std::max(0.0, cross2(tri[2] - p, tri[0] - p) / area2);
    w[2] = std::max(0.0, 1.0 - w[0] - w[1]);
    const double sum = w[0] + w[1] + w[2];
    for (double& wk : w) wk /= sum;
  } else {
    w[edge.edge] = 1.0 - edge.t;
    w[(edge.edge + 1) % 3] = edge.t;
  }
  return w;
}

void check_upstream(std::span<const double> upstream, std::size_t expected) {
  if (upstream.size() != expected) {
    throw ValidationError("upstream gradient has " + std::to_string(upstream.size()) +
                          " entries, expected " + std::to_string(expected));
  }
  for (double g : upstream) {
    if (!std::isfinite(g)) throw NumericError("upstream gradient contains a non-finite value");
  }
}

}  // namespace

Sharpness::Sharpness(double sigma) : sigma_(sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw ValidationError("sigma must be a positive finite number");
  }
}

int point_in_triangle(const Vec2& p, const Triangle2& tri) {
  const double area2 = cross2(tri[1] - tri[0], tri[2] - tri[0]);
  if (0.5 * std::abs(area2) < kDegenerateArea) return -1;
  const double e0 = cross2(tri[1] - tri[0], p - tri[0]);
  const double e1 = cross2(tri[2] - tri[1], p - tri[1]);
  const double e2 = cross2(tri[0] - tri[2], p - tri[2]);
  const bool non_negative = e0 >= 0.0 && e1 >= 0.0 && e2 >= 0.0;
  const bool non_positive = e0 <= 0.0 && e1 <= 0.0 && e2 <= 0.0;
  return (non_negative || non_positive) ? 1 : -1;
}

EdgeProjection closest_edge(const Vec2& p, const Triangle2& tri) {
  EdgeProjection best;
  best.dist2 = std::numeric_limits<double>::infinity();
  for (int e = 0; e < 3; ++e) {
    const Vec2& a = tri[e];
    const Vec2 ab = tri[(e + 1) % 3] - a;
    const double len2 = ab.squaredNorm();
    const double t = len2 > 0.0 ? std::clamp((p - a).dot(ab) / len2, 0.0, 1.0) : 0.0;
    const double d2 = (p - (a + t * ab)).squaredNorm();
    if (d2 < best.dist2) best = {d2, e, t};
  }
  return best;
}

double distance_to_triangle(const Vec2& p, const Triangle2& tri) {
  return std::sqrt(closest_edge(p, tri).dist2);
}

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double softplus(double x) {
  if (x > 0.0) return x + std::log1p(std::exp(-x));
  return std::log1p(std::exp(x));
}

double face_probability(const Vec2& p, const Triangle2& tri, Sharpness sigma) {
  const double d2 = closest_edge(p, tri).dist2;
  return sigmoid(point_in_triangle(p, tri) * d2 / sigma.value());
}

SoftRasterizer::SoftRasterizer(const Mesh& mesh, const Camera& camera, RasterOptions options)
    : mesh_(mesh), camera_(camera), options_(options), projected_(project(mesh, camera)) {
  validate(mesh);
  if (!options_.truncate) return;

  const int w = camera_.width;
  const int h = camera_.height;
  const double reach =
      std::sqrt(options_.sigma.value() * std::log(1.0 / kTruncationEpsilon - 1.0));
  std::vector<PixelRange> ranges(mesh_.faces.size());
  bin_offsets_.assign(std::size_t(w) * h + 1, 0);
  for (std::size_t f = 0; f < mesh_.faces.size(); ++f) {
    const Triangle2 tri = screen_triangle(static_cast<int>(f));
    Vec2 lo = tri[0].cwiseMin(tri[1]).cwiseMin(tri[2]);
    Vec2 hi = tri[0].cwiseMax(tri[1]).cwiseMax(tri[2]);
    lo.array() -= reach;
    hi.array() += reach;
    ranges[f] = pixel_range(lo, hi, w, h, 0);
    for (int r = ranges[f].row_begin; r < ranges[f].row_end; ++r) {
      for (int c = ranges[f].col_begin; c < ranges[f].col_end; ++c) {
        ++bin_offsets_[std::size_t(r) * w + c + 1];
      }
    }
  }
  for (std::size_t i = 1; i < bin_offsets_.size(); ++i) bin_offsets_[i] += bin_offsets_[i - 1];
  bin_faces_.resize(bin_offsets_.back());
  std::vector<std::size_t> cursor(bin_offsets_.begin(), bin_offsets_.end() - 1);
  for (std::size_t f = 0; f < mesh_.faces.size(); ++f) {
    for (int r = ranges[f].row_begin; r < ranges[f].row_end; ++r) {
      for (int c = ranges[f].col_begin; c < ranges[f].col_end; ++c) {
        bin_faces_[cursor[std::size_t(r) * w + c]++] = static_cast<int>(f);
      }
    }
  }
}

Triangle2 SoftRasterizer::screen_triangle(int face) const {
  const Face& f = mesh_.faces[face];
  return {projected_.screen_xy[f[0]], projected_.screen_xy[f[1]], projected_.screen_xy[f[2]]};
}

template <typename Fn>
void SoftRasterizer::for_each_candidate(std::size_t pixel, Fn&& fn) const {
  if (options_.truncate) {
    for (std::size_t k = bin_offsets_[pixel]; k < bin_offsets_[pixel + 1]; ++k) fn(bin_faces_[k]);
  } else {
    const int n = static_cast<int>(mesh_.faces.size());
    for (int f = 0; f < n; ++f) fn(f);
  }
}

void SoftRasterizer::fragments(std::size_t pixel, std::vector<Fragment>& out) const {
  out.clear();
  const int row = static_cast<int>(pixel / camera_.width);
  const int col = static_cast<int>(pixel % camera_.width);
  const Vec2 p = pixel_center(row, col, camera_.width, camera_.height);
  const double inv_sigma = 1.0 / options_.sigma.value();
  for_each_candidate(pixel, [&](int f) {
    const Triangle2 tri = screen_triangle(f);
    const EdgeProjection edge = closest_edge(p, tri);
    const int sign = point_in_triangle(p, tri);
    out.push_back({f, sign, sign * edge.dist2 * inv_sigma, edge});
  });
}

SoftSilhouette SoftRasterizer::silhouette() const {
  SoftSilhouette out(camera_.width, camera_.height);
  std::vector<Fragment> frags;
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    fragments(i, frags);
    double log_empty = 0.0;  // log prod_j (1 - D_j)
    for (const Fragment& fr : frags) log_empty -= softplus(fr.x);
    out.values[i] = 0.0 - std::expm1(log_empty);
  }
  return out;
}

BinaryMask SoftRasterizer::hard() const {
  const int w = camera_.width;
  const int h = camera_.height;
  BinaryMask mask(w, h);
  for (std::size_t f = 0; f < mesh_.faces.size(); ++f) {
    const Triangle2 tri = screen_triangle(static_cast<int>(f));
    const Vec2 lo = tri[0].cwiseMin(tri[1]).cwiseMin(tri[2]);
    const Vec2 hi = tri[0].cwiseMax(tri[1]).cwiseMax(tri[2]);
    const PixelRange range = pixel_range(lo, hi, w, h, 1);
    for (int r = range.row_begin; r < range.row_end; ++r) {
      for (int c = range.col_begin; c < range.col_end; ++c) {
        std::uint8_t& px = mask.values[std::size_t(r) * w + c];
        if (!px && point_in_triangle(pixel_center(r, c, w, h), tri) > 0) px = 1;
      }
    }
  }
  return mask;
}

GradientBuffer SoftRasterizer::backward(std::span<const double> upstream) const {
  const int w = camera_.width;
  const int h = camera_.height;
  check_upstream(upstream, std::size_t(w) * h);
  const double inv_sigma = 1.0 / options_.sigma.value();

  std::vector<std::array<Vec2, 3>> face_grad(mesh_.faces.size(),
                                             {Vec2::Zero(), Vec2::Zero(), Vec2::Zero()});
  std::vector<Fragment> frags;
  for (std::size_t i = 0; i < upstream.size(); ++i) {
    const double g = upstream[i];
    if (g == 0.0) continue;
    fragments(i, frags);
    double log_empty = 0.0;
    for (const Fragment& fr : frags) log_empty -= softplus(fr.x);
    const double empty = std::exp(log_empty);
    if (empty == 0.0) continue;
    const Vec2 p = pixel_center(static_cast<int>(i / w), static_cast<int>(i % w), w, h);
    for (const Fragment& fr : frags) {
      // dS/dx_j = prod_k (1 - D_k) * D_j, and dx_j/d(d^2) = sign / sigma.
      const double coef = g * empty * sigmoid(fr.x) * fr.sign * inv_sigma;
      if (coef == 0.0) continue;
      const Triangle2 tri = screen_triangle(fr.face);
      const int a = fr.edge.edge;
      const int b = (a + 1) % 3;
      const Vec2 q = tri[a] + fr.edge.t * (tri[b] - tri[a]);
      const Vec2 diff = p - q;
      face_grad[fr.face][a] -= (2.0 * coef * (1.0 - fr.edge.t)) * diff;
      face_grad[fr.face][b] -= (2.0 * coef * fr.edge.t) * diff;
    }
  }

  std::vector<Vec2> screen_grad(mesh_.vertices.size(), Vec2::Zero());
  for (std::size_t f = 0; f < mesh_.faces.size(); ++f) {
    for (int k = 0; k < 3; ++k) screen_grad[mesh_.faces[f][k]] += face_grad[f][k];
  }
  GradientBuffer out;
  out.d_vertices.assign(mesh_.vertices.size(), Vec3::Zero());
  for (std::size_t v = 0; v < mesh_.vertices.size(); ++v) {
    if (screen_grad[v].isZero(0.0)) continue;
    out.d_vertices[v] =
        projection_jacobian(camera_, mesh_.vertices[v]).transpose() * screen_grad[v];
  }
  return out;
}

ColorImage SoftRasterizer::color() const {
  if (!mesh_.colors) throw ValidationError("color rendering requires vertex colors");
  const int w = camera_.width;
  const int h = camera_.height;
  ColorImage out(w, h);
  std::vector<Fragment> frags;
  for (std::size_t i = 0; i < out.pixel_count(); ++i) {
    fragments(i, frags);
    const Vec2 p = pixel_center(static_cast<int>(i / w), static_cast<int>(i % w), w, h);
    double weight_sum = 0.0;
    Vec3 accum = Vec3::Zero();
    for (const Fragment& fr : frags) {
      const double d = sigmoid(fr.x);
      const Face& face = mesh_.faces[fr.face];
      const auto bw = color_weights(p, screen_triangle(fr.face), fr.sign, fr.edge);
      Vec3 c = Vec3::Zero();
      for (int k = 0; k < 3; ++k) c += bw[k] * (*mesh_.colors)[face[k]];
      accum += d * c;
      weight_sum += d;
    }
    const Vec3 rgb = accum / (weight_sum + kColorEpsilon);
    for (int ch = 0; ch < 3; ++ch) out.values[3 * i + ch] = rgb[ch];
  }
  return out;
}

GradientBuffer SoftRasterizer::backward_color(std::span<const double> upstream) const {
  if (!mesh_.colors) throw ValidationError("color gradients require vertex colors");
  const int w = camera_.width;
  const int h = camera_.height;
  check_upstream(upstream, std::size_t(w) * h * 3);

  std::vector<std::array<Vec3, 3>> face_grad(mesh_.faces.size(),
                                             {Vec3::Zero(), Vec3::Zero(), Vec3::Zero()});
  std::vector<Fragment> frags;
  std::vector<double> probs;
  for (std::size_t i = 0; i < std::size_t(w) * h; ++i) {
    const Vec3 g(upstream[3 * i], upstream[3 * i + 1], upstream[3 * i + 2]);
    if (g.isZero(0.0)) continue;
    fragments(i, frags);
    const Vec2 p = pixel_center(static_cast<int>(i / w), static_cast<int>(i % w), w, h);
    probs.clear();
    double weight_sum = 0.0;
    for (const Fragment& fr : frags) {
      probs.push_back(sigmoid(fr.x));
      weight_sum += probs.back();
    }
    const double inv_denom = 1.0 / (weight_sum + kColorEpsilon);
    for (std::size_t k = 0; k < frags.size(); ++k) {
      const Fragment& fr = frags[k];
      const auto bw = color_weights(p, screen_triangle(fr.face), fr.sign, fr.edge);
      for (int c = 0; c < 3; ++c) {
        if (bw[c] != 0.0) face_grad[fr.face][c] += (probs[k] * inv_denom * bw[c]) * g;
      }
    }
  }

  GradientBuffer out;
  out.d_vertices.assign(mesh_.vertices.size(), Vec3::Zero());
  out.d_colors.emplace(mesh_.vertices.size(), Vec3::Zero());
  for (std::size_t f = 0; f < mesh_.faces.size(); ++f) {
    for (int k = 0; k < 3; ++k) (*out.d_colors)[mesh_.faces[f][k]] += face_grad[f][k];
  }
  return out;
}

SoftSilhouette render_soft(const Mesh& mesh, const Camera& camera, RasterOptions options) {
  return SoftRasterizer(mesh, camera, options).silhouette();
}

BinaryMask render_hard(const Mesh& mesh, const Camera& camera) {
  return SoftRasterizer(mesh, camera).hard();
}

GradientBuffer backward_soft(const Mesh& mesh, const Camera& camera, RasterOptions options,
                             std::span<const double> upstream) {
  return SoftRasterizer(mesh, camera, options).backward(upstream);
}

ColorImage render_color(const Mesh& mesh, const Camera& camera, RasterOptions options) {
  return SoftRasterizer(mesh, camera, options).color();
}

GradientBuffer backward_color(const Mesh& mesh, const Camera& camera, RasterOptions options,
                              std::span<const double> upstream) {
  return SoftRasterizer(mesh, camera, options).backward_color(upstream);
}

}  // namespace softras
