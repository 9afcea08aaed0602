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

#include <filesystem>
#include <iosfwd>

#include "softras/mesh.hpp"

namespace softras {

// Wavefront OBJ subset: "v x y z [r g b]", "f i j k ..." with 1-based (or
// negative, relative) indices whose /vt/vn suffixes are ignored, "#" comments.
// Polygons with more than three corners are fan-split from the first corner.
// Other statements (vt, vn, o, g, s, usemtl, mtllib) are skipped.

Mesh read_obj(std::istream& in);
Mesh load_obj(const std::filesystem::path& path);

// Coordinates and colors are written with six fractional digits.
void write_obj(const Mesh& mesh, std::ostream& out);
void save_obj(const Mesh& mesh, const std::filesystem::path& path);

}  // namespace softras
