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
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dermbench/scores.hpp"
#include "dermbench/taxonomy.hpp"

namespace dermbench {

// ---------------------------------------------------------------------------
// Confusion matrix and precision / recall / F1
// ---------------------------------------------------------------------------

/// Index of the largest score; ties go to the lowest class index.
ClassId argmax(const ScoreRow& row);

/// Rows are true classes, columns predicted classes.
struct ConfusionMatrix {
    std::array<std::array<std::uint64_t, kNumClasses>, kNumClasses> counts{};

    std::uint64_t at(ClassId truth, ClassId predicted) const { return counts[index_of(truth)][index_of(predicted)]; }
    std::uint64_t support(ClassId c) const;
    std::uint64_t predicted(ClassId c) const;
    std::uint64_t total() const;
    std::uint64_t trace() const;

    /// Each row divided by its support, so the diagonal holds per-class recall.
    /// Rows with zero support are all zeros.
    std::array<std::array<double, kNumClasses>, kNumClasses> row_normalized() const;

    bool operator==(const ConfusionMatrix&) const = default;
};

ConfusionMatrix confusion_matrix(const ScoreMatrix& m);

/// Tallies explicit (truth, predicted) pairs.
ConfusionMatrix confusion_matrix(std::span<const ClassId> truths, std::span<const ClassId> predictions);

struct PrfTriple {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    std::uint64_t tp = 0;
    std::uint64_t fp = 0;
    std::uint64_t fn = 0;
    /// No support (tp + fn == 0): recall is 0/0. Excluded from macro averages by default.
    bool degenerate = false;
    /// Never predicted (tp + fp == 0): precision is 0/0 and reported as 0.
    bool precision_undefined = false;
};

/// precision = tp/(tp+fp), recall = tp/(tp+fn), f1 = 2tp/(2tp+fp+fn); 0/0 → 0.
PrfTriple prf_from_counts(std::uint64_t tp, std::uint64_t fp, std::uint64_t fn);

PrfTriple per_class_prf(const ConfusionMatrix& cm, ClassId c);

/// Pools tp, fp, fn over all classes. For single-label data this equals
/// accuracy in all three fields.
PrfTriple micro_average(const ConfusionMatrix& cm);

struct MacroAverage {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    /// Positions (into the input list) that were averaged.
    std::vector<std::size_t> included;
    std::vector<std::size_t> excluded;
    std::vector<std::string> warnings;
};

/// Unweighted mean over the included triples. Degenerate triples are skipped
/// (with a warning) unless `include_degenerate`. Throws ValidationError when
/// nothing is left to average.
MacroAverage macro_average(std::span<const PrfTriple> triples, bool include_degenerate = false);

// ---------------------------------------------------------------------------
// ROC
// ---------------------------------------------------------------------------

struct RocPoint {
    double fpr = 0.0;
    double tpr = 0.0;
    double threshold = 0.0;

    bool operator==(const RocPoint&) const = default;
};

/// Starts at (0,0), ends at (1,1); fpr and tpr never decrease.
struct RocCurve {
    std::vector<RocPoint> points;

    bool operator==(const RocCurve&) const = default;
};

/// Threshold sweep over the distinct scores in descending order. Samples with
/// equal scores enter together, so a tie block becomes one diagonal step.
/// The first point is (0,0) at threshold +inf.
///
/// Throws ValidationError ("AUC undefined") without both classes present.
RocCurve roc_from_binary(std::span<const double> scores, std::span<const std::uint8_t> positive);

/// One-vs-rest curve for class `c`.
RocCurve roc_curve(const ScoreMatrix& m, ClassId c);

/// True iff class `c` has at least one positive and one negative sample.
bool roc_defined(const ScoreMatrix& m, ClassId c);

/// Trapezoidal area under tpr(fpr).
double auc_trapezoid(const RocCurve& curve);

/// All N×8 (sample, class) pairs pooled into one binary problem.
RocCurve micro_roc(const ScoreMatrix& m);

/// tpr at `fpr` by linear interpolation. Where the curve is vertical at
/// exactly `fpr`, the highest tpr reached there is returned.
double interpolate_tpr(const RocCurve& curve, double fpr);

struct MacroRoc {
    /// AUC of the pointwise mean of per-class tpr on the union fpr grid.
    double auc_interpolated = 0.0;
    /// Plain mean of the per-class AUCs.
    double auc_mean = 0.0;
    /// The averaged curve; thresholds are NaN.
    RocCurve curve;
    std::vector<ClassId> included;
    std::vector<ClassId> excluded;
    std::vector<std::string> warnings;
};

/// Classes lacking positives or negatives are excluded with a warning; if
/// none remain, throws ValidationError.
MacroRoc macro_roc_auc(const ScoreMatrix& m);

// ---------------------------------------------------------------------------
// Human operating points
// ---------------------------------------------------------------------------

struct OperatorPoint {
    std::string name;
    ClassId target_class = ClassId::MEL;
    double sensitivity = 0.0;
    double specificity = 0.0;
};

/// Reads `name,target_class,sensitivity,specificity`; values must lie in [0,1].
std::vector<OperatorPoint> parse_operator_points(std::string_view text);

/// Mean sensitivity and specificity of the points targeting `c`, named "mean".
/// Throws ValidationError if there are none.
OperatorPoint mean_operator_point(std::span<const OperatorPoint> points, ClassId c);

/// AUC of (0,0) → (1−spec, sens) → (1,1), i.e. (sens + spec) / 2.
double point_auc(const OperatorPoint& p);

/// The three-point curve point_auc integrates.
RocCurve operator_curve(const OperatorPoint& p);

enum class Dominance { ModelDominates, OperatorDominates, Indeterminate };

std::string_view dominance_name(Dominance d);

struct DominanceResult {
    Dominance verdict = Dominance::Indeterminate;
    /// Model tpr at the operator's false-positive rate.
    double tpr_at_operator_fpr = 0.0;
};

/// Compares the model's tpr at fpr = 1 − specificity against the operator's
/// sensitivity; exact equality is Indeterminate.
DominanceResult dominance_check(const RocCurve& curve, const OperatorPoint& p);

}  // namespace dermbench
