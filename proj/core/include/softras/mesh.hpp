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

#include <array>
#include <optional>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace softras {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;

// Vertex indices of one triangle, counterclockwise when seen from outside.
using Face = std::array<int, 3>;

/// Triangle mesh with optional per-vertex RGB colors in [0,1].
struct Mesh {
  std::vector<Vec3> vertices;
  std::vector<Face> faces;
  std::optional<std::vector<Vec3>> colors;

  std::size_t num_vertices() const { return vertices.size(); }
  std::size_t num_faces() const { return faces.size(); }
  bool has_colors() const { return colors.has_value(); }
};

/// Throws ValidationError if any face index is out of range, a face repeats a
/// vertex, or the color array disagrees with the vertex array.
void validate(const Mesh& mesh);

/// Icosahedron refined by midpoint subdivision, every vertex projected onto the
/// sphere of the given radius. Produces 10 * 4^s + 2 vertices; s = 3 gives the
/// 642-vertex template used for fitting.
Mesh icosphere(int subdivisions, double radius);

/// For every vertex, the sorted indices of the vertices it shares an edge with.
struct VertexAdjacency {
  std::vector<std::vector<int>> neighbors;
};

VertexAdjacency vertex_adjacency(const Mesh& mesh);

/// An edge shared by exactly two faces. `a < b`; `left_face < right_face`.
struct InteriorEdge {
  int a = 0;
  int b = 0;
  int left_face = 0;
  int right_face = 0;
};

struct EdgeAdjacency {
  std::vector<InteriorEdge> interior_edges;  // sorted by (a, b)
};

/// Throws ValidationError when an edge has more than two incident faces.
EdgeAdjacency edge_adjacency(const Mesh& mesh);

/// Number of edges with exactly one incident face. Throws on non-manifold edges.
std::size_t count_boundary_edges(const Mesh& mesh);

/// Count of unique undirected edges.
std::size_t count_edges(const Mesh& mesh);

/// Volume enclosed by a closed, consistently oriented mesh (divergence theorem).
double signed_volume(const Mesh& mesh);

}  // namespace softras
