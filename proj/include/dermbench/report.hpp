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
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dermbench/metrics.hpp"
#include "dermbench/scores.hpp"

namespace dermbench {

enum class TableFormat { Csv, Markdown };

TableFormat parse_table_format(std::string_view text);

/// Percent scale, two decimals, half away from zero: 0.98155 → "98.16".
std::string format_percent(double fraction);

/// Everything eval computes for one model. Classes whose AUC is undefined on
/// this score file keep a slot with `class_auc` empty.
struct EvalReport {
    std::string model_name;
    std::array<std::optional<double>, kNumClasses> class_auc;
    std::array<std::optional<RocCurve>, kNumClasses> class_curves;
    double macro_auc = 0.0;       ///< interpolated-curve average
    double macro_auc_mean = 0.0;  ///< mean of per-class AUCs
    double micro_auc = 0.0;
    RocCurve micro_curve;
    RocCurve macro_curve;
    ConfusionMatrix confusion;
    std::array<PrfTriple, kNumClasses> per_class;
    PrfTriple micro;
    MacroAverage macro;
    std::size_t samples = 0;
    std::vector<std::string> warnings;
};

EvalReport evaluate(const ScoreMatrix& m, std::string model_name);

/// Header `Algorithm,Mel,NV,BCC,AKIEC,BK,DF,VASC,Atyp NV,Macro,Micro`, one row
/// per report; undefined per-class AUCs render as NA.
std::string render_table1(std::span<const EvalReport> reports, TableFormat format);

/// Micro/macro precision, F1 and ROC AUC per model.
std::string render_table2(std::span<const EvalReport> reports, TableFormat format);

std::string render_confusion_counts(const ConfusionMatrix& cm);
std::string render_confusion_normalized(const ConfusionMatrix& cm);
std::string render_prf(const EvalReport& report);
std::string render_metrics_json(const EvalReport& report);

/// `fpr,tpr,threshold` with 17 significant digits, so parse_roc_csv restores
/// the points exactly.
std::string format_roc_csv(const RocCurve& curve);
RocCurve parse_roc_csv(std::string_view text);

struct EvalOptions {
    std::string model_name;  ///< defaults to the score file stem
    std::filesystem::path out_dir = ".";
    TableFormat format = TableFormat::Csv;
};

struct CommandOutput {
    std::vector<std::filesystem::path> files;
    std::vector<std::string> warnings;
};

/// Writes table1, table2, both confusion matrices, prf.csv, metrics.json,
/// roc_<CLASS>.csv / .svg for every defined class, roc_micro.csv,
/// roc_macro.csv and the combined roc_all.svg into `out_dir`.
CommandOutput write_eval_outputs(const EvalReport& report, const std::filesystem::path& out_dir,
                                 TableFormat format);

EvalReport eval_command(const std::filesystem::path& score_file, const EvalOptions& options,
                        CommandOutput* output = nullptr);

// ---------------------------------------------------------------------------

struct NamedScores {
    std::string name;
    ScoreMatrix scores;
};

struct ComparisonCell {
    std::string model;
    ClassId target_class = ClassId::MEL;
    double model_auc = 0.0;
    double operator_auc = 0.0;
    DominanceResult dominance;
    RocCurve curve;
};

struct CompareReport {
    std::vector<ClassId> classes;
    /// Mean operator point per entry of `classes`.
    std::vector<OperatorPoint> mean_points;
    std::vector<OperatorPoint> operator_points;
    std::vector<std::string> models;
    /// Model-major: cells[m * classes.size() + k].
    std::vector<ComparisonCell> cells;
};

/// Throws ValidationError when a target class has no operator points or its
/// ROC is undefined in one of the score sets.
CompareReport compare(std::span<const NamedScores> models, std::span<const OperatorPoint> operators,
                      std::span<const ClassId> target_classes);

/// `Classifier,<class>...` with a Dermatologist row first, then one row per model.
std::string render_table3(const CompareReport& report, TableFormat format);
std::string render_comparison_detail(const CompareReport& report);

struct CompareOptions {
    std::vector<std::string> model_names;  ///< defaults to score file stems
    std::filesystem::path out_dir = ".";
    TableFormat format = TableFormat::Csv;
};

CompareReport compare_command(std::span<const std::filesystem::path> score_files,
                              const std::filesystem::path& operator_file, std::span<const ClassId> target_classes,
                              const CompareOptions& options, CommandOutput* output = nullptr);

}  // namespace dermbench
