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

#include "dermbench/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

#include "dermbench/csv.hpp"
#include "dermbench/error.hpp"

namespace dermbench {

ClassId argmax(const ScoreRow& row) {
    std::size_t best = 0;
    for (std::size_t c = 1; c < kNumClasses; ++c) {
        if (row[c] > row[best]) best = c;
    }
    return static_cast<ClassId>(best);
}

std::uint64_t ConfusionMatrix::support(ClassId c) const {
    const auto& row = counts[index_of(c)];
    return std::accumulate(row.begin(), row.end(), std::uint64_t{0});
}

std::uint64_t ConfusionMatrix::predicted(ClassId c) const {
    std::uint64_t s = 0;
    for (const auto& row : counts) s += row[index_of(c)];
    return s;
}

std::uint64_t ConfusionMatrix::total() const {
    std::uint64_t s = 0;
    for (const auto& row : counts) s += std::accumulate(row.begin(), row.end(), std::uint64_t{0});
    return s;
}

std::uint64_t ConfusionMatrix::trace() const {
    std::uint64_t s = 0;
    for (std::size_t c = 0; c < kNumClasses; ++c) s += counts[c][c];
    return s;
}

std::array<std::array<double, kNumClasses>, kNumClasses> ConfusionMatrix::row_normalized() const {
    std::array<std::array<double, kNumClasses>, kNumClasses> out{};
    for (std::size_t r = 0; r < kNumClasses; ++r) {
        const std::uint64_t n = support(static_cast<ClassId>(r));
        if (n == 0) continue;
        for (std::size_t c = 0; c < kNumClasses; ++c) {
            out[r][c] = static_cast<double>(counts[r][c]) / static_cast<double>(n);
        }
    }
    return out;
}

ConfusionMatrix confusion_matrix(std::span<const ClassId> truths, std::span<const ClassId> predictions) {
    if (truths.size() != predictions.size()) throw ValidationError("truths and predictions differ in length");
    ConfusionMatrix cm;
    for (std::size_t i = 0; i < truths.size(); ++i) ++cm.counts[index_of(truths[i])][index_of(predictions[i])];
    return cm;
}

ConfusionMatrix confusion_matrix(const ScoreMatrix& m) {
    ConfusionMatrix cm;
    for (std::size_t i = 0; i < m.size(); ++i) ++cm.counts[index_of(m.truths[i])][index_of(argmax(m.scores[i]))];
    return cm;
}

PrfTriple prf_from_counts(std::uint64_t tp, std::uint64_t fp, std::uint64_t fn) {
    auto ratio = [](std::uint64_t num, std::uint64_t den) {
        return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
    };
    PrfTriple t;
    t.tp = tp;
    t.fp = fp;
    t.fn = fn;
    t.precision = ratio(tp, tp + fp);
    t.recall = ratio(tp, tp + fn);
    t.f1 = ratio(2 * tp, 2 * tp + fp + fn);
    t.degenerate = (tp + fn) == 0;
    t.precision_undefined = (tp + fp) == 0;
    return t;
}

PrfTriple per_class_prf(const ConfusionMatrix& cm, ClassId c) {
    const std::uint64_t tp = cm.at(c, c);
    return prf_from_counts(tp, cm.predicted(c) - tp, cm.support(c) - tp);
}

PrfTriple micro_average(const ConfusionMatrix& cm) {
    std::uint64_t tp = 0, fp = 0, fn = 0;
    for (ClassId c : kAllClasses) {
        const std::uint64_t t = cm.at(c, c);
        tp += t;
        fp += cm.predicted(c) - t;
        fn += cm.support(c) - t;
    }
    return prf_from_counts(tp, fp, fn);
}

MacroAverage macro_average(std::span<const PrfTriple> triples, bool include_degenerate) {
    MacroAverage out;
    for (std::size_t i = 0; i < triples.size(); ++i) {
        if (triples[i].degenerate && !include_degenerate) {
            out.excluded.push_back(i);
            out.warnings.push_back("entry " + std::to_string(i) + " has no support; excluded from macro average");
            continue;
        }
        out.included.push_back(i);
        out.precision += triples[i].precision;
        out.recall += triples[i].recall;
        out.f1 += triples[i].f1;
    }
    if (out.included.empty()) throw ValidationError("macro average undefined: every class is degenerate");
    const auto n = static_cast<double>(out.included.size());
    out.precision /= n;
    out.recall /= n;
    out.f1 /= n;
    return out;
}

// ---------------------------------------------------------------------------

RocCurve roc_from_binary(std::span<const double> scores, std::span<const std::uint8_t> positive) {
    if (scores.size() != positive.size()) throw ValidationError("scores and labels differ in length");
    std::uint64_t pos = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (std::isnan(scores[i])) throw ValidationError("NaN score in ROC input");
        pos += positive[i] ? 1 : 0;
    }
    const std::uint64_t neg = scores.size() - pos;
    if (pos == 0 || neg == 0) {
        throw ValidationError(pos == 0 ? "AUC undefined for class: no positive samples"
                                       : "AUC undefined for class: no negative samples");
    }

    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

    RocCurve curve;
    curve.points.push_back({0.0, 0.0, std::numeric_limits<double>::infinity()});
    std::uint64_t tp = 0, fp = 0;
    for (std::size_t k = 0; k < order.size();) {
        const double threshold = scores[order[k]];
        for (; k < order.size() && scores[order[k]] == threshold; ++k) {
            if (positive[order[k]]) {
                ++tp;
            } else {
                ++fp;
            }
        }
        curve.points.push_back({static_cast<double>(fp) / static_cast<double>(neg),
                                static_cast<double>(tp) / static_cast<double>(pos), threshold});
    }
    return curve;
}

bool roc_defined(const ScoreMatrix& m, ClassId c) {
    bool has_pos = false, has_neg = false;
    for (ClassId t : m.truths) {
        if (t == c) {
            has_pos = true;
        } else {
            has_neg = true;
        }
    }
    return has_pos && has_neg;
}

RocCurve roc_curve(const ScoreMatrix& m, ClassId c) {
    std::vector<std::uint8_t> positive(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) positive[i] = m.truths[i] == c;
    try {
        return roc_from_binary(m.column(c), positive);
    } catch (const ValidationError& e) {
        throw ValidationError(std::string(class_code(c)) + ": " + e.what());
    }
}

double auc_trapezoid(const RocCurve& curve) {
    double area = 0.0;
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
        const auto& a = curve.points[i - 1];
        const auto& b = curve.points[i];
        area += (b.fpr - a.fpr) * (a.tpr + b.tpr) / 2.0;
    }
    return area;
}

RocCurve micro_roc(const ScoreMatrix& m) {
    std::vector<double> scores;
    std::vector<std::uint8_t> positive;
    scores.reserve(m.size() * kNumClasses);
    positive.reserve(m.size() * kNumClasses);
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t c = 0; c < kNumClasses; ++c) {
            scores.push_back(m.scores[i][c]);
            positive.push_back(index_of(m.truths[i]) == c);
        }
    }
    return roc_from_binary(scores, positive);
}

double interpolate_tpr(const RocCurve& curve, double fpr) {
    const auto& pts = curve.points;
    if (pts.empty()) return 0.0;
    // Last point with point.fpr <= fpr; it carries the highest tpr at that fpr.
    auto it = std::upper_bound(pts.begin(), pts.end(), fpr, [](double f, const RocPoint& p) { return f < p.fpr; });
    if (it == pts.begin()) return pts.front().tpr;
    const RocPoint& lo = *std::prev(it);
    if (it == pts.end() || lo.fpr == fpr) return lo.tpr;
    const RocPoint& hi = *it;
    return lo.tpr + (hi.tpr - lo.tpr) * (fpr - lo.fpr) / (hi.fpr - lo.fpr);
}

MacroRoc macro_roc_auc(const ScoreMatrix& m) {
    MacroRoc out;
    std::vector<RocCurve> curves;
    for (ClassId c : kAllClasses) {
        if (!roc_defined(m, c)) {
            out.excluded.push_back(c);
            out.warnings.push_back("class " + std::string(class_code(c)) +
                                   " lacks positives or negatives; excluded from macro ROC AUC");
            continue;
        }
        out.included.push_back(c);
        curves.push_back(roc_curve(m, c));
    }
    if (curves.empty()) throw ValidationError("macro ROC AUC undefined: every class excluded");

    std::vector<double> grid;
    for (const auto& curve : curves) {
        for (const auto& p : curve.points) grid.push_back(p.fpr);
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    const auto n = static_cast<double>(curves.size());
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (double f : grid) {
        double sum = 0.0;
        for (const auto& curve : curves) sum += interpolate_tpr(curve, f);
        out.curve.points.push_back({f, sum / n, nan});
    }
    out.auc_interpolated = auc_trapezoid(out.curve);
    if (out.curve.points.front().tpr > 0.0) out.curve.points.insert(out.curve.points.begin(), {0.0, 0.0, nan});

    double auc_sum = 0.0;
    for (const auto& curve : curves) auc_sum += auc_trapezoid(curve);
    out.auc_mean = auc_sum / n;
    return out;
}

// ---------------------------------------------------------------------------

std::vector<OperatorPoint> parse_operator_points(std::string_view text) {
    const csv::Table table = csv::parse(text);
    const std::size_t c_name = table.column("name");
    const std::size_t c_class = table.column("target_class");
    const std::size_t c_sens = table.column("sensitivity");
    const std::size_t c_spec = table.column("specificity");
    std::vector<OperatorPoint> points;
    for (const auto& row : table.rows) {
        auto fail = [&](const std::string& msg) {
            throw ValidationError("operator file line " + std::to_string(row.line) + ": " + msg);
        };
        auto value = [&](std::size_t col) {
            const std::string& s = row.fields[col];
            double v = 0.0;
            auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
            if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) fail("not a number '" + s + "'");
            if (!(v >= 0.0 && v <= 1.0)) fail("value outside [0,1]: " + s);
            return v;
        };
        OperatorPoint p;
        p.name = row.fields[c_name];
        auto cls = class_from_code(row.fields[c_class]);
        if (!cls) fail("unknown target_class '" + row.fields[c_class] + "'");
        p.target_class = *cls;
        p.sensitivity = value(c_sens);
        p.specificity = value(c_spec);
        points.push_back(std::move(p));
    }
    return points;
}

OperatorPoint mean_operator_point(std::span<const OperatorPoint> points, ClassId c) {
    OperatorPoint mean{"mean", c, 0.0, 0.0};
    std::size_t n = 0;
    for (const auto& p : points) {
        if (p.target_class != c) continue;
        mean.sensitivity += p.sensitivity;
        mean.specificity += p.specificity;
        ++n;
    }
    if (n == 0) throw ValidationError("no operator points for class " + std::string(class_code(c)));
    mean.sensitivity /= static_cast<double>(n);
    mean.specificity /= static_cast<double>(n);
    return mean;
}

double point_auc(const OperatorPoint& p) { return (p.sensitivity + p.specificity) / 2.0; }

RocCurve operator_curve(const OperatorPoint& p) {
    const double inf = std::numeric_limits<double>::infinity();
    const double nan = std::numeric_limits<double>::quiet_NaN();
    return RocCurve{{{0.0, 0.0, inf}, {1.0 - p.specificity, p.sensitivity, nan}, {1.0, 1.0, -inf}}};
}

std::string_view dominance_name(Dominance d) {
    switch (d) {
        case Dominance::ModelDominates: return "model_dominates";
        case Dominance::OperatorDominates: return "operator_dominates";
        case Dominance::Indeterminate: return "indeterminate";
    }
    return "?";
}

DominanceResult dominance_check(const RocCurve& curve, const OperatorPoint& p) {
    DominanceResult r;
    r.tpr_at_operator_fpr = interpolate_tpr(curve, 1.0 - p.specificity);
    if (r.tpr_at_operator_fpr > p.sensitivity) {
        r.verdict = Dominance::ModelDominates;
    } else if (r.tpr_at_operator_fpr < p.sensitivity) {
        r.verdict = Dominance::OperatorDominates;
    } else {
        r.verdict = Dominance::Indeterminate;
    }
    return r;
}

}  // namespace dermbench
