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

#include "dermbench/scores.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <unordered_set>

#include "dermbench/csv.hpp"
#include "dermbench/error.hpp"
#include "dermbench/fileio.hpp"

namespace dermbench {
namespace {

constexpr std::size_t kMaxReportedErrors = 20;

/// Collects row-level problems so one failed load reports all of them.
class ErrorList {
public:
    void add(std::size_t line, const std::string& msg) {
        ++count_;
        if (count_ <= kMaxReportedErrors) text_ += "\n  line " + std::to_string(line) + ": " + msg;
    }
    void throw_if_any(std::string_view what) const {
        if (count_ == 0) return;
        std::string msg = std::string(what) + ": " + std::to_string(count_) + " error(s)" + text_;
        if (count_ > kMaxReportedErrors) msg += "\n  ...";
        throw ValidationError(msg);
    }

private:
    std::size_t count_ = 0;
    std::string text_;
};

std::vector<std::string> expected_header() {
    std::vector<std::string> h = {"image_id", "true_label"};
    for (ClassId c : kAllClasses) h.emplace_back(class_code(c));
    return h;
}

bool parse_double(const std::string& s, double& out) {
    const char* b = s.data();
    const char* e = s.data() + s.size();
    // from_chars rejects a leading '+', which some writers emit.
    if (b != e && *b == '+') ++b;
    auto [ptr, ec] = std::from_chars(b, e, out);
    return ec == std::errc() && ptr == e && b != e;
}

}  // namespace

std::vector<double> ScoreMatrix::column(ClassId c) const {
    std::vector<double> col(scores.size());
    for (std::size_t i = 0; i < scores.size(); ++i) col[i] = scores[i][index_of(c)];
    return col;
}

ScoreMatrix parse_scores(std::string_view text) {
    const csv::Table table = csv::parse(text);
    if (table.header != expected_header()) {
        throw ValidationError("score file header must be '" + csv::join(expected_header()) + "'");
    }
    ScoreMatrix m;
    m.image_ids.reserve(table.rows.size());
    m.truths.reserve(table.rows.size());
    m.scores.reserve(table.rows.size());

    ErrorList errors;
    std::unordered_set<std::string> seen;
    for (const auto& row : table.rows) {
        const auto& f = row.fields;
        bool ok = true;
        if (f[0].empty()) {
            errors.add(row.line, "empty image_id");
            ok = false;
        } else if (!seen.insert(f[0]).second) {
            errors.add(row.line, "duplicate image_id '" + f[0] + "'");
            ok = false;
        }
        auto truth = class_from_code(f[1]);
        if (!truth) {
            errors.add(row.line, "unknown label '" + f[1] + "'");
            ok = false;
        }
        ScoreRow scores{};
        double sum = 0.0;
        for (std::size_t c = 0; c < kNumClasses; ++c) {
            double v = 0.0;
            if (!parse_double(f[c + 2], v) || !std::isfinite(v)) {
                errors.add(row.line, "column " + std::string(class_code(class_from_index(c))) + ": not a number '" +
                                         f[c + 2] + "'");
                ok = false;
                continue;
            }
            if (v < 0.0 || v > 1.0) {
                errors.add(row.line, "column " + std::string(class_code(class_from_index(c))) +
                                         ": probability outside [0,1]: " + f[c + 2]);
                ok = false;
            }
            scores[c] = v;
            sum += v;
        }
        if (ok && std::fabs(sum - 1.0) > kRowSumTolerance) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.9g", sum);
            errors.add(row.line, std::string("row sums to ") + buf + ", not 1 within 1e-4");
            ok = false;
        }
        if (ok) {
            m.image_ids.push_back(f[0]);
            m.truths.push_back(*truth);
            m.scores.push_back(scores);
        }
    }
    errors.throw_if_any("invalid score file");
    if (m.empty()) throw ValidationError("score file has no data rows");
    return m;
}

ScoreMatrix read_scores(const std::filesystem::path& path) {
    try {
        return parse_scores(read_text_file(path));
    } catch (const ValidationError& e) {
        throw ValidationError(path.string() + ": " + e.what());
    }
}

void validate_score_matrix(const ScoreMatrix& m) {
    if (m.image_ids.size() != m.truths.size() || m.scores.size() != m.truths.size()) {
        throw ValidationError("score matrix columns have different lengths");
    }
    if (m.empty()) throw ValidationError("score matrix is empty");
    ErrorList errors;
    std::unordered_set<std::string> seen;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (!seen.insert(m.image_ids[i]).second) errors.add(i + 1, "duplicate image_id '" + m.image_ids[i] + "'");
        double sum = 0.0;
        for (double v : m.scores[i]) {
            if (!std::isfinite(v) || v < 0.0 || v > 1.0) errors.add(i + 1, "probability outside [0,1]");
            sum += v;
        }
        if (std::fabs(sum - 1.0) > kRowSumTolerance) errors.add(i + 1, "row does not sum to 1 within 1e-4");
    }
    errors.throw_if_any("invalid score matrix (rows numbered from 1)");
}

std::string format_scores(const ScoreMatrix& m) {
    std::string out = csv::join(expected_header()) + '\n';
    char buf[40];
    for (std::size_t i = 0; i < m.size(); ++i) {
        out += csv::escape(m.image_ids[i]);
        out.push_back(',');
        out += class_code(m.truths[i]);
        for (double v : m.scores[i]) {
            std::snprintf(buf, sizeof buf, "%.17g", v);
            out.push_back(',');
            out += buf;
        }
        out.push_back('\n');
    }
    return out;
}

}  // namespace dermbench
