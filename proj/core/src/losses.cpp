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

#include "softras/losses.hpp"

#include <cmath>
#include <string>

#include "softras/error.hpp"

namespace softras {
namespace {

constexpr double kDegenerateFaceArea = 1e-12;

struct FaceNormal {
  Vec3 unit;
  double length;  // |(b - a) x (c - a)|
};

FaceNormal face_normal(const Mesh& mesh, int face) {
  const Face& f = mesh.faces[face];
  const Vec3 m = (mesh.vertices[f[1]] - mesh.vertices[f[0]])
                     .cross(mesh.vertices[f[2]] - mesh.vertices[f[0]]);
  const double len = m.norm();
  if (!(0.5 * len > kDegenerateFaceArea)) {
    throw ValidationError("face " + std::to_string(face) + " is degenerate");
  }
  return {m / len, len};
}

// Pushes dL/dn for a face's unit normal back onto its three vertices.
void scatter_normal_grad(const Mesh& mesh, int face, const FaceNormal& n, const Vec3& dn,
                         std::vector<Vec3>& grad) {
  const Face& f = mesh.faces[face];
  const Vec3 dm = (dn - n.unit * n.unit.dot(dn)) / n.length;
  const Vec3 e1 = mesh.vertices[f[1]] - mesh.vertices[f[0]];
  const Vec3 e2 = mesh.vertices[f[2]] - mesh.vertices[f[0]];
  const Vec3 d_e1 = e2.cross(dm);
  const Vec3 d_e2 = dm.cross(e1);
  grad[f[0]] -= d_e1 + d_e2;
  grad[f[1]] += d_e1;
  grad[f[2]] += d_e2;
}

}  // namespace

void validate(const LossWeights& weights) {
  if (!(weights.lambda >= 0.0) || !(weights.mu >= 0.0) || !std::isfinite(weights.lambda) ||
      !std::isfinite(weights.mu)) {
    throw ValidationError("loss weights must be finite and non-negative");
  }
}

ImageLoss iou_loss(const SoftSilhouette& soft, const BinaryMask& target) {
  if (soft.width != target.width || soft.height != target.height) {
    throw ValidationError("iou_loss: silhouette and target sizes differ");
  }
  double inter = 0.0;
  double uni = 0.0;
  for (std::size_t i = 0; i < soft.values.size(); ++i) {
    const double s = soft.values[i];
    const double t = target.values[i];
    inter += s * t;
    uni += s + t - s * t;
  }
  ImageLoss out;
  out.grad.assign(soft.values.size(), 0.0);
  if (uni == 0.0) {
    out.degenerate = true;
    return out;
  }
  out.value = 1.0 - inter / uni;
  const double inv_u2 = 1.0 / (uni * uni);
  for (std::size_t i = 0; i < soft.values.size(); ++i) {
    const double t = target.values[i];
    out.grad[i] = -(t * uni - inter * (1.0 - t)) * inv_u2;
  }
  return out;
}

VertexLoss laplacian_loss(const Mesh& mesh, const VertexAdjacency& adjacency) {
  const std::size_t n = mesh.vertices.size();
  if (adjacency.neighbors.size() != n) {
    throw ValidationError("laplacian_loss: adjacency does not match the mesh");
  }
  std::vector<Vec3> delta(n);
  VertexLoss out;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& nb = adjacency.neighbors[i];
    if (nb.empty()) {
      throw ValidationError("laplacian_loss: vertex " + std::to_string(i) + " is isolated");
    }
    Vec3 centroid = Vec3::Zero();
    for (int j : nb) centroid += mesh.vertices[j];
    delta[i] = mesh.vertices[i] - centroid / static_cast<double>(nb.size());
    out.value += delta[i].squaredNorm();
  }
  out.grad.assign(n, Vec3::Zero());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& nb = adjacency.neighbors[i];
    out.grad[i] += 2.0 * delta[i];
    const Vec3 spread = (2.0 / static_cast<double>(nb.size())) * delta[i];
    for (int j : nb) out.grad[j] -= spread;
  }
  return out;
}

VertexLoss flattening_loss(const Mesh& mesh, const EdgeAdjacency& edges) {
  VertexLoss out;
  out.grad.assign(mesh.vertices.size(), Vec3::Zero());
  for (const InteriorEdge& e : edges.interior_edges) {
    const FaceNormal nl = face_normal(mesh, e.left_face);
    const FaceNormal nr = face_normal(mesh, e.right_face);
    const double one_plus_cos = 1.0 - nl.unit.dot(nr.unit);
    out.value += one_plus_cos * one_plus_cos;
    // d/dn_l (1 - n_l.n_r)^2 = -2 (1 - n_l.n_r) n_r, symmetric for n_r.
    scatter_normal_grad(mesh, e.left_face, nl, -2.0 * one_plus_cos * nr.unit, out.grad);
    scatter_normal_grad(mesh, e.right_face, nr, -2.0 * one_plus_cos * nl.unit, out.grad);
  }
  return out;
}

ImageLoss color_l2_loss(const ColorImage& rendered, const ColorImage& target) {
  if (rendered.width != target.width || rendered.height != target.height ||
      rendered.values.size() != target.values.size()) {
    throw ValidationError("color_l2_loss: image sizes differ");
  }
  ImageLoss out;
  out.grad.resize(rendered.values.size());
  if (rendered.values.empty()) return out;
  const double scale = 1.0 / static_cast<double>(rendered.values.size());
  for (std::size_t i = 0; i < rendered.values.size(); ++i) {
    const double diff = rendered.values[i] - target.values[i];
    out.value += diff * diff;
    out.grad[i] = 2.0 * diff * scale;
  }
  out.value *= scale;
  return out;
}

LossReport total_loss(const LossComponents& c, const LossWeights& weights) {
  validate(weights);
  const bool finite = std::isfinite(c.iou) && std::isfinite(c.laplacian) &&
                      std::isfinite(c.flattening) && (!c.color || std::isfinite(*c.color));
  if (!finite) throw NumericError("total_loss: non-finite loss component");
  LossReport r;
  r.iou = c.iou;
  r.laplacian = c.laplacian;
  r.flattening = c.flattening;
  r.color = c.color;
  r.total = c.iou + weights.lambda * c.laplacian + weights.mu * c.flattening;
  if (c.color) r.total += *c.color;
  return r;
}

}  // namespace softras
