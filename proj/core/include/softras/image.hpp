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

#include <cstddef>
#include <cstdint>
#include <vector>

namespace softras {

// All images are stored in scan-line order: row-major, top row first.

/// Soft coverage in [0,1] per pixel.
struct SoftSilhouette {
  int width = 0;
  int height = 0;
  std::vector<double> values;

  SoftSilhouette() = default;
  SoftSilhouette(int w, int h) : width(w), height(h), values(std::size_t(w) * h, 0.0) {}

  double at(int row, int col) const { return values[std::size_t(row) * width + col]; }
  std::size_t size() const { return values.size(); }
};

struct BinaryMask {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> values;  // 0 or 1

  BinaryMask() = default;
  BinaryMask(int w, int h) : width(w), height(h), values(std::size_t(w) * h, 0) {}

  bool at(int row, int col) const { return values[std::size_t(row) * width + col] != 0; }
  std::size_t size() const { return values.size(); }
  std::size_t count() const;
};

/// Interleaved RGB, three doubles per pixel.
struct ColorImage {
  int width = 0;
  int height = 0;
  std::vector<double> values;

  ColorImage() = default;
  ColorImage(int w, int h) : width(w), height(h), values(std::size_t(w) * h * 3, 0.0) {}

  std::size_t pixel_count() const { return std::size_t(width) * height; }
};

/// Pixelwise value >= threshold.
BinaryMask threshold(const SoftSilhouette& soft, double threshold);

/// |A and B| / |A or B|; both empty yields 1.
double mask_iou(const BinaryMask& a, const BinaryMask& b);

}  // namespace softras
