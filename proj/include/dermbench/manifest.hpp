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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dermbench/taxonomy.hpp"

namespace dermbench {

enum class Source { HAM10000, PH2 };
enum class Split { TRAIN, VAL, TEST };

inline constexpr std::size_t kNumSplits = 3;

constexpr std::size_t index_of(Split s) { return static_cast<std::size_t>(s); }

std::string_view source_name(Source s);
Source parse_source(std::string_view text);
std::string_view split_name(Split s);
Split parse_split(std::string_view text);

/// One image of the merged benchmark.
struct ManifestRecord {
    std::string image_id;
    std::string path;
    Source source = Source::HAM10000;
    ClassId label = ClassId::MEL;
    std::optional<std::string> lesion_id;
    std::optional<Split> split;
    /// Set by preprocessing; serialized as an extra `checksum` column.
    std::optional<std::string> checksum;

    bool operator==(const ManifestRecord&) const = default;
};

using Manifest = std::vector<ManifestRecord>;

/// Serializes to `image_id,path,source,label,lesion_id,split[,checksum]` with LF endings.
/// The checksum column is emitted only when at least one record carries one.
std::string format_manifest(const Manifest& manifest);

/// Parses the format written by format_manifest. Unknown labels, sources or
/// splits are ValidationErrors naming the line.
Manifest parse_manifest(std::string_view text);

Manifest read_manifest(const std::filesystem::path& path);
void write_manifest(const std::filesystem::path& path, const Manifest& manifest);

}  // namespace dermbench
