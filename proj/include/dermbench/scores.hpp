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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dermbench/taxonomy.hpp"

namespace dermbench {

/// Maximum |row sum − 1| accepted when loading a score file.
inline constexpr double kRowSumTolerance = 1e-4;

using ScoreRow = std::array<double, kNumClasses>;

/// N softmax rows paired with ground truth, in file order.
struct ScoreMatrix {
    std::vector<std::string> image_ids;
    std::vector<ClassId> truths;
    std::vector<ScoreRow> scores;

    std::size_t size() const { return truths.size(); }
    bool empty() const { return truths.empty(); }

    /// Scores of one class across all samples.
    std::vector<double> column(ClassId c) const;
};

/// Parses and validates the score-file format:
/// `image_id,true_label,MEL,NV,BCC,AKIEC,BKL,DF,VASC,ATYP_NV`.
///
/// Rejects, with line numbers: a different header, probabilities that are not
/// finite or fall outside [0,1], rows whose sum is more than 1e-4 from 1,
/// unknown labels, duplicate image_ids, and files with no data rows.
ScoreMatrix parse_scores(std::string_view text);

ScoreMatrix read_scores(const std::filesystem::path& path);

/// Checks the in-memory invariants parse_scores enforces on files.
void validate_score_matrix(const ScoreMatrix& m);

/// Writes the score-file format; probabilities use 17 significant digits.
std::string format_scores(const ScoreMatrix& m);

}  // namespace dermbench
