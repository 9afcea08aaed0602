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

#include "softras/obj_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "softras/error.hpp"

namespace softras {
namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
  throw IoError("OBJ line " + std::to_string(line_no) + ": " + what);
}

double parse_double(std::string_view tok, std::size_t line_no) {
  double value = 0.0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (!tok.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    fail(line_no, "cannot parse number '" + std::string(tok) + "'");
  }
  return value;
}

int parse_index(std::string_view tok, std::size_t vertex_count, std::size_t line_no) {
  const std::string_view head = tok.substr(0, tok.find('/'));
  long long raw = 0;
  const auto [ptr, ec] = std::from_chars(head.data(), head.data() + head.size(), raw);
  if (head.empty() || ec != std::errc() || ptr != head.data() + head.size() || raw == 0) {
    fail(line_no, "malformed face index '" + std::string(tok) + "'");
  }
  const long long n = static_cast<long long>(vertex_count);
  const long long idx = raw > 0 ? raw - 1 : n + raw;
  if (idx < 0 || idx >= n) {
    fail(line_no, "face index " + std::to_string(raw) + " out of range (" +
                      std::to_string(n) + " vertices defined)");
  }
  return static_cast<int>(idx);
}

}  // namespace

Mesh read_obj(std::istream& in) {
  Mesh mesh;
  std::vector<Vec3> colors;
  bool any_color = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = split_ws(line);
    if (tokens.empty() || tokens[0].front() == '#') continue;
    const std::string_view kind = tokens[0];
    if (kind == "v") {
      if (tokens.size() != 4 && tokens.size() != 7) {
        fail(line_no, "vertex needs 3 or 6 values");
      }
      mesh.vertices.emplace_back(parse_double(tokens[1], line_no),
                                 parse_double(tokens[2], line_no),
                                 parse_double(tokens[3], line_no));
      const bool has_color = tokens.size() == 7;
      if (mesh.vertices.size() > 1 && has_color != any_color) {
        fail(line_no, "vertex colors must be given for all vertices or none");
      }
      any_color = has_color;
      if (has_color) {
        colors.emplace_back(parse_double(tokens[4], line_no), parse_double(tokens[5], line_no),
                            parse_double(tokens[6], line_no));
      }
    } else if (kind == "f") {
      if (tokens.size() < 4) fail(line_no, "face needs at least 3 vertices");
      std::vector<int> poly;
      poly.reserve(tokens.size() - 1);
      for (std::size_t k = 1; k < tokens.size(); ++k) {
        poly.push_back(parse_index(tokens[k], mesh.vertices.size(), line_no));
      }
      for (std::size_t k = 1; k + 1 < poly.size(); ++k) {
        mesh.faces.push_back({poly[0], poly[k], poly[k + 1]});
      }
    }
  }
  if (any_color) mesh.colors = std::move(colors);
  validate(mesh);
  return mesh;
}

Mesh load_obj(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open OBJ file '" + path.string() + "'");
  try {
    return read_obj(in);
  } catch (const IoError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

void write_obj(const Mesh& mesh, std::ostream& out) {
  char buf[160];
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
    const Vec3& v = mesh.vertices[i];
    int n = 0;
    if (mesh.colors) {
      const Vec3& c = (*mesh.colors)[i];
      n = std::snprintf(buf, sizeof(buf), "v %.6f %.6f %.6f %.6f %.6f %.6f\n", v.x(), v.y(),
                        v.z(), c.x(), c.y(), c.z());
    } else {
      n = std::snprintf(buf, sizeof(buf), "v %.6f %.6f %.6f\n", v.x(), v.y(), v.z());
    }
    out.write(buf, n);
  }
  for (const Face& f : mesh.faces) {
    out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
  }
}

void save_obj(const Mesh& mesh, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write OBJ file '" + path.string() + "'");
  write_obj(mesh, out);
  if (!out) throw IoError("failed while writing '" + path.string() + "'");
}

}  // namespace softras
