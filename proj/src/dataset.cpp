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

#include "dermbench/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <unordered_set>

#include "dermbench/csv.hpp"
#include "dermbench/error.hpp"
#include "dermbench/fileio.hpp"

namespace dermbench {
namespace fs = std::filesystem;
namespace {

bool is_image_extension(std::string ext) {
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char ch) { return std::tolower(ch); });
    return ext == ".jpg" || ext == ".jpeg" || ext == ".png" || ext == ".bmp";
}

/// Maps file stem to path for every image under `root`. When a stem occurs
/// more than once the lexicographically smallest path wins, so the result does
/// not depend on directory iteration order.
class ImageIndex {
public:
    explicit ImageIndex(const fs::path& root) {
        std::error_code ec;
        if (!fs::is_directory(root, ec)) {
            throw IoError("image directory '" + root.string() + "' does not exist");
        }
        for (auto it = fs::recursive_directory_iterator(root, fs::directory_options::follow_directory_symlink, ec);
             !ec && it != fs::recursive_directory_iterator(); it.increment(ec)) {
            if (!it->is_regular_file(ec)) continue;
            const fs::path& p = it->path();
            if (!is_image_extension(p.extension().string())) continue;
            std::string stem = p.stem().string();
            std::string s = p.string();
            auto [pos, inserted] = by_stem_.emplace(std::move(stem), s);
            if (!inserted && s < pos->second) pos->second = std::move(s);
        }
        if (ec) throw IoError("cannot scan '" + root.string() + "': " + ec.message());
    }

    std::optional<std::string> find(const std::string& image_id) const {
        auto it = by_stem_.find(image_id);
        if (it == by_stem_.end()) return std::nullopt;
        return it->second;
    }

private:
    std::map<std::string, std::string> by_stem_;
};

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char ch) { return std::tolower(ch); });
    return s;
}

/// Resolves a record's image path, applying the missing-image policy.
/// Returns false when the record must be dropped.
bool attach_path(ManifestRecord& record, const ImageIndex& index, const IngestOptions& options,
                 std::size_t line, IngestResult& result) {
    if (auto p = index.find(record.image_id)) {
        record.path = *p;
        return true;
    }
    std::string msg = "line " + std::to_string(line) + ": no image file found for '" + record.image_id + "'";
    if (options.missing_images == MissingImagePolicy::Error) throw IoError(msg);
    result.warnings.push_back(msg + " (skipped)");
    ++result.dropped;
    return false;
}

struct Ph2Row {
    std::size_t line;
    std::string name;
    ClassId label;
};

ClassId ph2_label_from_text(const std::string& raw, std::size_t line) {
    std::string d = lower(trim(raw));
    std::replace(d.begin(), d.end(), ' ', '_');
    if (d == "0" || d == "common_nevus" || d == "common_nevi") return ClassId::NV;
    if (d == "1" || d == "atypical_nevus" || d == "atypical_nevi") return ClassId::ATYP_NV;
    if (d == "2" || d == "melanoma") return ClassId::MEL;
    throw ValidationError("PH2 index line " + std::to_string(line) + ": unmapped diagnosis '" + raw + "'");
}

std::vector<std::string> split_pipe_row(std::string_view line) {
    std::vector<std::string> cells;
    std::size_t pos = 0;
    while (true) {
        std::size_t next = line.find("||", pos);
        std::string_view cell = line.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos);
        cells.push_back(trim(cell));
        if (next == std::string_view::npos) break;
        pos = next + 2;
    }
    // Leading and trailing `||` produce empty edge cells.
    if (!cells.empty() && cells.front().empty()) cells.erase(cells.begin());
    if (!cells.empty() && cells.back().empty()) cells.pop_back();
    return cells;
}

std::vector<Ph2Row> parse_ph2_pipe_table(std::string_view text) {
    std::vector<Ph2Row> rows;
    std::vector<std::string> header;
    std::size_t c_name = 0, c_common = 0, c_atypical = 0, c_mel = 0;
    std::size_t pos = 0, line_no = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string line = trim(text.substr(pos, end - pos));
        pos = end + 1;
        ++line_no;
        if (line.rfind("||", 0) != 0) {
            // The table ends at the first non-table line once data has started.
            if (!rows.empty()) break;
            continue;
        }
        auto cells = split_pipe_row(line);
        if (header.empty()) {
            header = cells;
            auto col = [&](std::string_view name) {
                for (std::size_t i = 0; i < header.size(); ++i) {
                    if (lower(header[i]) == lower(std::string(name))) return i;
                }
                throw ValidationError("PH2 index: missing column '" + std::string(name) + "'");
            };
            c_name = col("Name");
            c_common = col("Common Nevus");
            c_atypical = col("Atypical Nevus");
            c_mel = col("Melanoma");
            continue;
        }
        // Empty cells collapse at the edges only, so pad short rows on the right.
        if (cells.size() < header.size()) cells.resize(header.size());
        if (cells.size() != header.size() || cells[c_name].empty()) {
            throw ValidationError("PH2 index line " + std::to_string(line_no) + ": malformed row");
        }
        const bool common = lower(cells[c_common]) == "x";
        const bool atypical = lower(cells[c_atypical]) == "x";
        const bool mel = lower(cells[c_mel]) == "x";
        if (common + atypical + mel != 1) {
            throw ValidationError("PH2 index line " + std::to_string(line_no) +
                                  ": expected exactly one clinical diagnosis mark for " + cells[c_name]);
        }
        rows.push_back({line_no, cells[c_name], common ? ClassId::NV : atypical ? ClassId::ATYP_NV : ClassId::MEL});
    }
    if (header.empty()) throw ValidationError("PH2 index: no header row");
    return rows;
}

std::vector<Ph2Row> parse_ph2_csv(std::string_view text) {
    const csv::Table table = csv::parse(text);
    std::size_t c_name = table.find_column("image_id");
    if (c_name == std::string::npos) c_name = table.column("name");
    std::size_t c_dx = table.find_column("diagnosis");
    if (c_dx == std::string::npos) c_dx = table.column("clinical_diagnosis");
    std::vector<Ph2Row> rows;
    for (const auto& row : table.rows) {
        const std::string name = trim(row.fields[c_name]);
        if (name.empty()) {
            throw ValidationError("PH2 index line " + std::to_string(row.line) + ": malformed row (empty id)");
        }
        rows.push_back({row.line, name, ph2_label_from_text(row.fields[c_dx], row.line)});
    }
    return rows;
}

}  // namespace

IngestResult ingest_ham10000_text(std::string_view metadata, const fs::path& image_dir,
                                  const IngestOptions& options) {
    const csv::Table table = csv::parse(metadata);
    const std::size_t c_lesion = table.column("lesion_id");
    const std::size_t c_image = table.column("image_id");
    const std::size_t c_dx = table.column("dx");

    IngestResult result;
    if (table.rows.empty()) return result;
    const ImageIndex index(image_dir);
    result.records.reserve(table.rows.size());
    for (const auto& row : table.rows) {
        const auto& f = row.fields;
        auto label = class_from_ham_dx(f[c_dx]);
        if (!label) {
            throw ValidationError("HAM10000 metadata line " + std::to_string(row.line) + " (" + f[c_image] +
                                  "): unknown diagnosis code '" + f[c_dx] + "'");
        }
        if (f[c_image].empty()) {
            throw ValidationError("HAM10000 metadata line " + std::to_string(row.line) + ": empty image_id");
        }
        ManifestRecord r;
        r.image_id = f[c_image];
        r.source = Source::HAM10000;
        r.label = *label;
        if (!f[c_lesion].empty()) r.lesion_id = f[c_lesion];
        if (attach_path(r, index, options, row.line, result)) result.records.push_back(std::move(r));
    }
    return result;
}

IngestResult ingest_ham10000(const fs::path& metadata_file, const fs::path& image_dir, const IngestOptions& options) {
    return ingest_ham10000_text(read_text_file(metadata_file), image_dir, options);
}

IngestResult ingest_ph2_text(std::string_view index_text, const fs::path& image_dir, ClassSet selected,
                             const IngestOptions& options) {
    std::string_view probe = index_text;
    while (!probe.empty() && std::isspace(static_cast<unsigned char>(probe.front()))) probe.remove_prefix(1);
    const std::vector<Ph2Row> rows =
        probe.rfind("||", 0) == 0 ? parse_ph2_pipe_table(index_text) : parse_ph2_csv(index_text);

    IngestResult result;
    if (selected.empty() || rows.empty()) {
        result.excluded = rows.size();
        return result;
    }
    const ImageIndex index(image_dir);
    for (const auto& row : rows) {
        if (!selected.contains(row.label)) {
            ++result.excluded;
            continue;
        }
        ManifestRecord r;
        r.image_id = row.name;
        r.source = Source::PH2;
        r.label = row.label;
        r.lesion_id = row.name;
        if (attach_path(r, index, options, row.line, result)) result.records.push_back(std::move(r));
    }
    return result;
}

IngestResult ingest_ph2(const fs::path& index_file, const fs::path& image_dir, ClassSet selected,
                        const IngestOptions& options) {
    return ingest_ph2_text(read_text_file(index_file), image_dir, selected, options);
}

Manifest merge_manifests(const Manifest& a, const Manifest& b) {
    std::unordered_set<std::string> seen;
    seen.reserve(a.size() + b.size());
    std::set<std::string> duplicates;
    Manifest merged;
    merged.reserve(a.size() + b.size());
    for (const Manifest* part : {&a, &b}) {
        for (const auto& r : *part) {
            if (!seen.insert(r.image_id).second) duplicates.insert(r.image_id);
            merged.push_back(r);
        }
    }
    if (!duplicates.empty()) {
        std::string msg = "duplicate image_id in merged manifest:";
        for (const auto& id : duplicates) msg += " " + id;
        throw ValidationError(msg);
    }
    return merged;
}

DatasetSummary summarize(const Manifest& manifest) {
    DatasetSummary s;
    for (const auto& r : manifest) ++s.per_class_counts[index_of(r.label)];
    s.total = manifest.size();
    return s;
}

}  // namespace dermbench
