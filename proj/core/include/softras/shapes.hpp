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

#include "softras/mesh.hpp"

namespace softras {

/// Axis-aligned ellipsoid centered at the origin: a scaled icosphere.
Mesh ellipsoid(const Vec3& semi_axes, int subdivisions);

/// Axis-aligned box centered at `center` with the given edge lengths; 8
/// vertices, 12 outward-wound triangles.
Mesh box(const Vec3& extents, const Vec3& center = Vec3::Zero());

/// Copy of `mesh` with every vertex rotated about +y by `degrees`.
Mesh rotated_about_y(const Mesh& mesh, double degrees);

}  // namespace softras
