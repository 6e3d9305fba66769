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

#include "dermbench/manifest.hpp"

#include <algorithm>

#include "dermbench/csv.hpp"
#include "dermbench/error.hpp"
#include "dermbench/fileio.hpp"

namespace dermbench {

std::string_view source_name(Source s) {
    switch (s) {
        case Source::HAM10000: return "HAM10000";
        case Source::PH2: return "PH2";
    }
    return "?";
}

Source parse_source(std::string_view text) {
    if (text == "HAM10000") return Source::HAM10000;
    if (text == "PH2") return Source::PH2;
    throw ValidationError("unknown source '" + std::string(text) + "'");
}

std::string_view split_name(Split s) {
    switch (s) {
        case Split::TRAIN: return "TRAIN";
        case Split::VAL: return "VAL";
        case Split::TEST: return "TEST";
    }
    return "?";
}

Split parse_split(std::string_view text) {
    if (text == "TRAIN") return Split::TRAIN;
    if (text == "VAL") return Split::VAL;
    if (text == "TEST") return Split::TEST;
    throw ValidationError("unknown split '" + std::string(text) + "'");
}

std::string format_manifest(const Manifest& manifest) {
    const bool with_checksum = std::any_of(manifest.begin(), manifest.end(),
                                           [](const ManifestRecord& r) { return r.checksum.has_value(); });
    std::vector<std::string> header = {"image_id", "path", "source", "label", "lesion_id", "split"};
    if (with_checksum) header.emplace_back("checksum");

    std::string out = csv::join(header) + '\n';
    for (const auto& r : manifest) {
        std::vector<std::string> fields = {
            r.image_id,
            r.path,
            std::string(source_name(r.source)),
            std::string(class_code(r.label)),
            r.lesion_id.value_or(""),
            r.split ? std::string(split_name(*r.split)) : std::string(),
        };
        if (with_checksum) fields.push_back(r.checksum.value_or(""));
        out += csv::join(fields);
        out.push_back('\n');
    }
    return out;
}

Manifest parse_manifest(std::string_view text) {
    const csv::Table table = csv::parse(text);
    const std::size_t c_id = table.column("image_id");
    const std::size_t c_path = table.column("path");
    const std::size_t c_source = table.column("source");
    const std::size_t c_label = table.column("label");
    const std::size_t c_lesion = table.column("lesion_id");
    const std::size_t c_split = table.column("split");
    const std::size_t c_checksum = table.find_column("checksum");

    Manifest manifest;
    manifest.reserve(table.rows.size());
    for (const auto& row : table.rows) {
        const auto& f = row.fields;
        try {
            ManifestRecord r;
            r.image_id = f[c_id];
            if (r.image_id.empty()) throw ValidationError("empty image_id");
            r.path = f[c_path];
            r.source = parse_source(f[c_source]);
            auto label = class_from_code(f[c_label]);
            if (!label) throw ValidationError("unknown label '" + f[c_label] + "'");
            r.label = *label;
            if (!f[c_lesion].empty()) r.lesion_id = f[c_lesion];
            if (!f[c_split].empty()) r.split = parse_split(f[c_split]);
            if (c_checksum != std::string::npos && !f[c_checksum].empty()) r.checksum = f[c_checksum];
            manifest.push_back(std::move(r));
        } catch (const ValidationError& e) {
            throw ValidationError("manifest line " + std::to_string(row.line) + ": " + e.what());
        }
    }
    return manifest;
}

Manifest read_manifest(const std::filesystem::path& path) {
    try {
        return parse_manifest(read_text_file(path));
    } catch (const ValidationError& e) {
        throw ValidationError(path.string() + ": " + e.what());
    }
}

void write_manifest(const std::filesystem::path& path, const Manifest& manifest) {
    write_file_atomic(path, format_manifest(manifest));
}

}  // namespace dermbench
