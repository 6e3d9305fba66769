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
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace dermbench::csv {

/// One parsed line. `line` is 1-based and counts the header.
struct Row {
    std::size_t line = 0;
    std::vector<std::string> fields;
};

struct Table {
    std::vector<std::string> header;
    std::vector<Row> rows;

    /// Column position of `name` in the header; throws ValidationError when absent.
    std::size_t column(std::string_view name) const;
    /// Column position of `name`, or npos.
    std::size_t find_column(std::string_view name) const;
};

/// Splits one line on `delim`, honouring double-quoted fields with "" escapes.
std::vector<std::string> split_line(std::string_view line, char delim = ',');

/// Parses comma-separated text. Blank lines are skipped; CRLF is accepted.
/// Throws ValidationError when a row's field count differs from the header.
Table parse(std::string_view text, char delim = ',');

Table read_file(const std::filesystem::path& path, char delim = ',');

/// Quotes a field only when it contains the delimiter, a quote, or a newline.
std::string escape(std::string_view field, char delim = ',');

std::string join(const std::vector<std::string>& fields, char delim = ',');

}  // namespace dermbench::csv
