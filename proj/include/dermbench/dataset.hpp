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

#include <array>
#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "dermbench/manifest.hpp"
#include "dermbench/taxonomy.hpp"

namespace dermbench {

enum class MissingImagePolicy {
    Error,  ///< abort ingestion (default)
    Skip,   ///< warn, drop the record, and count it in IngestResult::dropped
};

struct IngestOptions {
    MissingImagePolicy missing_images = MissingImagePolicy::Error;
};

struct IngestResult {
    Manifest records;
    /// Rows dropped because their image file was not found (Skip policy only).
    std::size_t dropped = 0;
    /// PH2 rows whose label was outside the selection.
    std::size_t excluded = 0;
    std::vector<std::string> warnings;
};

/// Reads HAM10000 metadata (`lesion_id,image_id,dx,...`) and resolves each
/// image under `image_dir` (searched recursively by file stem).
///
/// Diagnosis codes map nv→NV, mel→MEL, bcc→BCC, akiec→AKIEC, bkl→BKL,
/// df→DF, vasc→VASC; anything else is a ValidationError naming the line.
IngestResult ingest_ham10000(const std::filesystem::path& metadata_file,
                             const std::filesystem::path& image_dir,
                             const IngestOptions& options = {});

IngestResult ingest_ham10000_text(std::string_view metadata, const std::filesystem::path& image_dir,
                                  const IngestOptions& options = {});

/// Labels kept from PH2 by default: melanoma and atypical nevus.
inline constexpr ClassSet kDefaultPh2Selection = ClassSet::of({ClassId::MEL, ClassId::ATYP_NV});

/// Reads a PH2 index and keeps lesions whose mapped label is in `selected`.
///
/// Two layouts are accepted: the distribution's `||`-delimited table with
/// `Name`, `Common Nevus`, `Atypical Nevus`, `Melanoma` columns (one cell
/// marked `X`), or a CSV with `image_id` and `diagnosis` columns where the
/// diagnosis is 0/1/2 or common_nevus/atypical_nevus/melanoma.
/// Common nevus maps to NV, atypical nevus to ATYP_NV, melanoma to MEL.
IngestResult ingest_ph2(const std::filesystem::path& index_file, const std::filesystem::path& image_dir,
                        ClassSet selected = kDefaultPh2Selection, const IngestOptions& options = {});

IngestResult ingest_ph2_text(std::string_view index, const std::filesystem::path& image_dir,
                             ClassSet selected = kDefaultPh2Selection, const IngestOptions& options = {});

/// Concatenates `a` then `b`. Any image_id present twice is a ValidationError
/// listing every duplicate.
Manifest merge_manifests(const Manifest& a, const Manifest& b);

struct DatasetSummary {
    std::array<std::size_t, kNumClasses> per_class_counts{};
    std::size_t total = 0;

    std::size_t count(ClassId c) const { return per_class_counts[index_of(c)]; }
    bool operator==(const DatasetSummary&) const = default;
};

DatasetSummary summarize(const Manifest& manifest);

}  // namespace dermbench
