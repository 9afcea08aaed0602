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

#include "softras/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>

#include "softras/error.hpp"

namespace softras {
namespace {

constexpr int kMaxSubdivisions = 6;

std::uint64_t edge_key(int a, int b) {
  const auto lo = static_cast<std::uint64_t>(std::min(a, b));
  const auto hi = static_cast<std::uint64_t>(std::max(a, b));
  return (lo << 32) | hi;
}

// Incident faces per undirected edge, keyed and ordered by (min, max).
std::map<std::pair<int, int>, std::vector<int>> edge_faces(const Mesh& mesh) {
  std::map<std::pair<int, int>, std::vector<int>> result;
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    const Face& face = mesh.faces[f];
    for (int k = 0; k < 3; ++k) {
      const int a = face[k];
      const int b = face[(k + 1) % 3];
      result[{std::min(a, b), std::max(a, b)}].push_back(static_cast<int>(f));
    }
  }
  return result;
}

}  // namespace

void validate(const Mesh& mesh) {
  const auto n = static_cast<long long>(mesh.vertices.size());
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    const Face& face = mesh.faces[f];
    for (int idx : face) {
      if (idx < 0 || idx >= n) {
        throw ValidationError("face " + std::to_string(f) + " references vertex " +
                              std::to_string(idx) + " but the mesh has " +
                              std::to_string(n) + " vertices");
      }
    }
    if (face[0] == face[1] || face[1] == face[2] || face[0] == face[2]) {
      throw ValidationError("face " + std::to_string(f) + " repeats a vertex");
    }
  }
  if (mesh.colors) {
    if (mesh.colors->size() != mesh.vertices.size()) {
      throw ValidationError("color count does not match vertex count");
    }
    for (std::size_t i = 0; i < mesh.colors->size(); ++i) {
      const Vec3& c = (*mesh.colors)[i];
      for (int ch = 0; ch < 3; ++ch) {
        if (!(c[ch] >= 0.0 && c[ch] <= 1.0)) {
          throw ValidationError("color of vertex " + std::to_string(i) +
                                " is outside [0,1]");
        }
      }
    }
  }
}

Mesh icosphere(int subdivisions, double radius) {
  if (subdivisions < 0 || subdivisions > kMaxSubdivisions) {
    throw ValidationError("icosphere subdivisions must be in [0, " +
                          std::to_string(kMaxSubdivisions) + "], got " +
                          std::to_string(subdivisions));
  }
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw ValidationError("icosphere radius must be positive");
  }

  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  Mesh mesh;
  mesh.vertices = {
      {-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0},
      {0, -1, t}, {0, 1, t}, {0, -1, -t}, {0, 1, -t},
      {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1},
  };
  for (Vec3& v : mesh.vertices) v.normalize();
  mesh.faces = {
      {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
      {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
      {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
      {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1},
  };

  for (int level = 0; level < subdivisions; ++level) {
    std::unordered_map<std::uint64_t, int> midpoints;
    midpoints.reserve(mesh.faces.size() * 2);
    auto midpoint = [&](int a, int b) {
      const auto [it, inserted] =
          midpoints.try_emplace(edge_key(a, b), static_cast<int>(mesh.vertices.size()));
      if (inserted) {
        mesh.vertices.push_back((mesh.vertices[a] + mesh.vertices[b]).normalized());
      }
      return it->second;
    };
    std::vector<Face> refined;
    refined.reserve(mesh.faces.size() * 4);
    for (const Face& f : mesh.faces) {
      const int ab = midpoint(f[0], f[1]);
      const int bc = midpoint(f[1], f[2]);
      const int ca = midpoint(f[2], f[0]);
      refined.push_back({f[0], ab, ca});
      refined.push_back({f[1], bc, ab});
      refined.push_back({f[2], ca, bc});
      refined.push_back({ab, bc, ca});
    }
    mesh.faces = std::move(refined);
  }

  for (Vec3& v : mesh.vertices) v *= radius;
  return mesh;
}

VertexAdjacency vertex_adjacency(const Mesh& mesh) {
  VertexAdjacency adj;
  adj.neighbors.resize(mesh.vertices.size());
  for (const Face& f : mesh.faces) {
    for (int k = 0; k < 3; ++k) {
      const int a = f[k];
      const int b = f[(k + 1) % 3];
      adj.neighbors[a].push_back(b);
      adj.neighbors[b].push_back(a);
    }
  }
  for (auto& list : adj.neighbors) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  return adj;
}

EdgeAdjacency edge_adjacency(const Mesh& mesh) {
  EdgeAdjacency result;
  for (const auto& [edge, faces] : edge_faces(mesh)) {
    if (faces.size() > 2) {
      throw ValidationError("non-manifold edge (" + std::to_string(edge.first) + ", " +
                            std::to_string(edge.second) + ") has " +
                            std::to_string(faces.size()) + " incident faces");
    }
    if (faces.size() == 2) {
      result.interior_edges.push_back({edge.first, edge.second, faces[0], faces[1]});
    }
  }
  return result;
}

std::size_t count_boundary_edges(const Mesh& mesh) {
  std::size_t boundary = 0;
  for (const auto& [edge, faces] : edge_faces(mesh)) {
    if (faces.size() > 2) {
      throw ValidationError("non-manifold edge (" + std::to_string(edge.first) + ", " +
                            std::to_string(edge.second) + ")");
    }
    if (faces.size() == 1) ++boundary;
  }
  return boundary;
}

std::size_t count_edges(const Mesh& mesh) { return edge_faces(mesh).size(); }

double signed_volume(const Mesh& mesh) {
  double six_v = 0.0;
  for (const Face& f : mesh.faces) {
    six_v += mesh.vertices[f[0]].dot(mesh.vertices[f[1]].cross(mesh.vertices[f[2]]));
  }
  return six_v / 6.0;
}

}  // namespace softras
