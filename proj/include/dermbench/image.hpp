// Copyright 2026 The dermbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace dermbench {

struct ImageSize {
    std::size_t width = 0;
    std::size_t height = 0;

    bool operator==(const ImageSize&) const = default;
};

/// Interleaved 8-bit raster, row-major, `channels` samples per pixel.
class Raster {
public:
    Raster() = default;
    Raster(std::size_t width, std::size_t height, std::size_t channels, std::uint8_t fill = 0);
    Raster(std::size_t width, std::size_t height, std::size_t channels, std::vector<std::uint8_t> data);

    std::size_t width() const { return width_; }
    std::size_t height() const { return height_; }
    std::size_t channels() const { return channels_; }
    ImageSize size() const { return {width_, height_}; }
    bool empty() const { return width_ == 0 || height_ == 0; }

    std::uint8_t at(std::size_t x, std::size_t y, std::size_t c) const {
        return data_[(y * width_ + x) * channels_ + c];
    }
    std::uint8_t& at(std::size_t x, std::size_t y, std::size_t c) { return data_[(y * width_ + x) * channels_ + c]; }

    std::span<const std::uint8_t> data() const { return data_; }
    std::span<std::uint8_t> data() { return data_; }

    bool operator==(const Raster&) const = default;

private:
    std::size_t width_ = 0;
    std::size_t height_ = 0;
    std::size_t channels_ = 0;
    std::vector<std::uint8_t> data_;
};

/// Bilinear resize with half-pixel centres.
///
/// For an output column x the source coordinate is (x + 0.5)·(W_src/W_dst) − 0.5,
/// clamped to [0, W_src − 1]; rows likewise. Each channel is interpolated
/// independently and rounded half away from zero. All arithmetic is done on
/// exact integer rationals, so the output is bit-identical on every platform.
///
/// Throws ValidationError if either raster has a zero dimension.
Raster resize_bilinear(const Raster& src, ImageSize target);

/// Decodes any format OpenCV reads into a 3-channel RGB raster.
/// Throws ValidationError when the file exists but cannot be decoded.
Raster decode_image_file(const std::filesystem::path& path);

/// Encodes a 1- or 3-channel raster as PNG bytes.
std::string encode_png(const Raster& image);

}  // namespace dermbench
