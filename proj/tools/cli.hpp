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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "softras/fit.hpp"
#include "softras/image.hpp"

namespace softras::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // numerical or validation failure
inline constexpr int kExitUsage = 2;    // I/O or argument error

/// 8-bit grayscale image as stored in a binary PGM.
struct GrayscaleImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> values;
};

/// Reads a P5 PGM with maxval 255. Throws IoError on a bad magic number, an
/// unsupported maxval or a truncated payload.
GrayscaleImage read_pgm(const std::filesystem::path& path);
GrayscaleImage read_pgm(std::istream& in);
void write_pgm(const GrayscaleImage& image, const std::filesystem::path& path);

/// round(255 * value), halves rounded up.
GrayscaleImage to_grayscale(const SoftSilhouette& soft);
GrayscaleImage to_grayscale(const BinaryMask& mask);

/// Bytes >= 128 are foreground.
BinaryMask to_mask(const GrayscaleImage& image);

/// One view of a manifest. `image` is resolved against the manifest directory.
struct ManifestRow {
  double azimuth = 0.0;
  double elevation = 0.0;
  double distance = 0.0;
  std::filesystem::path image;
};

/// "azimuth_deg,elevation_deg,distance,image_path" with a header line.
/// Throws IoError naming the offending line.
std::vector<ManifestRow> read_manifest(const std::filesystem::path& path);
void write_manifest(const std::vector<ManifestRow>& rows, const std::filesystem::path& path);

/// "iter,iou,laplacian,flattening,color,total"; the color column is empty when
/// color fitting is off. Values use round-trip precision.
void write_loss_csv(const std::vector<LossReport>& history, std::ostream& out);
void write_loss_csv(const std::vector<LossReport>& history, const std::filesystem::path& path);

/// Builds cameras and target masks from a manifest.
ViewSet load_views(const std::filesystem::path& manifest, double fov_y);

/// Entry point for the `softras` tool; `args` excludes the program name.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace softras::cli
