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

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "dermbench/image.hpp"
#include "dermbench/manifest.hpp"

namespace dermbench {

enum class Interpolation { Bilinear };
enum class OutputFormat { PNG };

struct PreprocessSpec {
    ImageSize target_size{224, 224};
    Interpolation interpolation = Interpolation::Bilinear;
    OutputFormat output_format = OutputFormat::PNG;

    /// True for the usual backbone input sizes, 224×224 and 299×299.
    bool is_standard_size() const;
};

/// Parses "224x224".
ImageSize parse_image_size(std::string_view text);

Raster resize_image(const Raster& image, const PreprocessSpec& spec);

struct PreprocessOptions {
    /// Drop undecodable images (with a warning) instead of failing.
    bool skip_undecodable = false;
    /// 0 means hardware concurrency.
    unsigned threads = 0;
};

struct PreprocessResult {
    /// Input order, minus skipped records. Each path points at
    /// `<out_dir>/<image_id>.png` and `checksum` is the SHA-256 of that file.
    Manifest manifest;
    std::size_t skipped = 0;
    std::vector<std::string> warnings;
};

PreprocessResult preprocess_batch(const Manifest& manifest, const PreprocessSpec& spec,
                                  const std::filesystem::path& out_dir, const PreprocessOptions& options = {});

}  // namespace dermbench
