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

#include "dermbench/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "json.hpp"

#include "dermbench/csv.hpp"
#include "dermbench/error.hpp"
#include "dermbench/fileio.hpp"
#include "dermbench/svg.hpp"

namespace dermbench {
namespace fs = std::filesystem;
namespace {

std::string render_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows,
                         TableFormat format) {
    std::string out;
    if (format == TableFormat::Csv) {
        out += csv::join(header) + '\n';
        for (const auto& r : rows) out += csv::join(r) + '\n';
        return out;
    }
    auto md_row = [](const std::vector<std::string>& cells) {
        std::string line = "|";
        for (const auto& c : cells) line += " " + c + " |";
        return line + '\n';
    };
    out += md_row(header);
    out += "|";
    for (std::size_t i = 0; i < header.size(); ++i) out += i == 0 ? " --- |" : " ---: |";
    out += '\n';
    for (const auto& r : rows) out += md_row(r);
    return out;
}

std::string table_ext(TableFormat f) { return f == TableFormat::Csv ? ".csv" : ".md"; }

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fixed6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

void write_output(const fs::path& path, std::string_view content, CommandOutput& out) {
    write_file_atomic(path, content);
    out.files.push_back(path);
}

}  // namespace

TableFormat parse_table_format(std::string_view text) {
    if (text == "csv") return TableFormat::Csv;
    if (text == "md") return TableFormat::Markdown;
    throw ValidationError("unknown table format '" + std::string(text) + "' (expected csv or md)");
}

std::string format_percent(double fraction) {
    const long long hundredths = std::llround(fraction * 10000.0);
    const long long mag = hundredths < 0 ? -hundredths : hundredths;
    char buf[48];
    std::snprintf(buf, sizeof buf, "%s%lld.%02lld", hundredths < 0 ? "-" : "", mag / 100, mag % 100);
    return buf;
}

EvalReport evaluate(const ScoreMatrix& m, std::string model_name) {
    validate_score_matrix(m);
    EvalReport r;
    r.model_name = std::move(model_name);
    r.samples = m.size();
    r.confusion = confusion_matrix(m);
    for (ClassId c : kAllClasses) {
        r.per_class[index_of(c)] = per_class_prf(r.confusion, c);
        if (roc_defined(m, c)) {
            RocCurve curve = roc_curve(m, c);
            r.class_auc[index_of(c)] = auc_trapezoid(curve);
            r.class_curves[index_of(c)] = std::move(curve);
        }
    }
    r.micro = micro_average(r.confusion);
    r.macro = macro_average(r.per_class);
    for (std::size_t i : r.macro.excluded) {
        r.warnings.push_back("class " + std::string(class_code(class_from_index(i))) +
                             " has no support; excluded from macro precision/recall/F1");
    }
    r.micro_curve = micro_roc(m);
    r.micro_auc = auc_trapezoid(r.micro_curve);
    MacroRoc macro = macro_roc_auc(m);
    r.macro_auc = macro.auc_interpolated;
    r.macro_auc_mean = macro.auc_mean;
    r.macro_curve = std::move(macro.curve);
    r.warnings.insert(r.warnings.end(), macro.warnings.begin(), macro.warnings.end());
    return r;
}

std::string render_table1(std::span<const EvalReport> reports, TableFormat format) {
    std::vector<std::string> header = {"Algorithm"};
    for (ClassId c : kAllClasses) header.emplace_back(class_display_name(c));
    header.emplace_back("Macro");
    header.emplace_back("Micro");
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : reports) {
        std::vector<std::string> row = {r.model_name};
        for (const auto& auc : r.class_auc) row.push_back(auc ? format_percent(*auc) : "NA");
        row.push_back(format_percent(r.macro_auc));
        row.push_back(format_percent(r.micro_auc));
        rows.push_back(std::move(row));
    }
    return render_table(header, rows, format);
}

std::string render_table2(std::span<const EvalReport> reports, TableFormat format) {
    const std::vector<std::string> header = {"Classifier", "Precision Micro", "Precision Macro", "F1 Micro",
                                             "F1 Macro",   "ROC AUC Micro",   "ROC AUC Macro"};
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : reports) {
        rows.push_back({r.model_name, format_percent(r.micro.precision), format_percent(r.macro.precision),
                        format_percent(r.micro.f1), format_percent(r.macro.f1), format_percent(r.micro_auc),
                        format_percent(r.macro_auc)});
    }
    return render_table(header, rows, format);
}

std::string render_confusion_counts(const ConfusionMatrix& cm) {
    std::string out = "true\\predicted";
    for (ClassId c : kAllClasses) out += "," + std::string(class_code(c));
    out += '\n';
    for (ClassId t : kAllClasses) {
        out += class_code(t);
        for (ClassId p : kAllClasses) out += "," + std::to_string(cm.at(t, p));
        out += '\n';
    }
    return out;
}

std::string render_confusion_normalized(const ConfusionMatrix& cm) {
    const auto norm = cm.row_normalized();
    std::string out = "true\\predicted";
    for (ClassId c : kAllClasses) out += "," + std::string(class_code(c));
    out += '\n';
    for (ClassId t : kAllClasses) {
        out += class_code(t);
        for (ClassId p : kAllClasses) out += "," + fixed6(norm[index_of(t)][index_of(p)]);
        out += '\n';
    }
    return out;
}

std::string render_prf(const EvalReport& r) {
    std::string out = "class,precision,recall,f1,tp,fp,fn,support,degenerate\n";
    auto line = [&](std::string_view name, const PrfTriple& t) {
        out += std::string(name) + "," + fixed6(t.precision) + "," + fixed6(t.recall) + "," + fixed6(t.f1) + "," +
               std::to_string(t.tp) + "," + std::to_string(t.fp) + "," + std::to_string(t.fn) + "," +
               std::to_string(t.tp + t.fn) + "," + (t.degenerate ? "true" : "false") + "\n";
    };
    for (ClassId c : kAllClasses) line(class_code(c), r.per_class[index_of(c)]);
    line("micro", r.micro);
    out += "macro," + fixed6(r.macro.precision) + "," + fixed6(r.macro.recall) + "," + fixed6(r.macro.f1) +
           ",,,,," + std::to_string(r.macro.included.size()) + " classes\n";
    return out;
}

std::string render_metrics_json(const EvalReport& r) {
    using nlohmann::ordered_json;
    ordered_json j;
    j["model"] = r.model_name;
    j["samples"] = r.samples;
    ordered_json classes = ordered_json::object();
    for (ClassId c : kAllClasses) {
        const auto& t = r.per_class[index_of(c)];
        ordered_json e;
        e["auc"] = r.class_auc[index_of(c)] ? ordered_json(*r.class_auc[index_of(c)]) : ordered_json(nullptr);
        e["precision"] = t.precision;
        e["recall"] = t.recall;
        e["f1"] = t.f1;
        e["tp"] = t.tp;
        e["fp"] = t.fp;
        e["fn"] = t.fn;
        e["support"] = t.tp + t.fn;
        e["degenerate"] = t.degenerate;
        classes[std::string(class_code(c))] = e;
    }
    j["classes"] = classes;
    j["micro"] = {{"precision", r.micro.precision}, {"recall", r.micro.recall}, {"f1", r.micro.f1},
                  {"auc", r.micro_auc}};
    j["macro"] = {{"precision", r.macro.precision}, {"recall", r.macro.recall}, {"f1", r.macro.f1},
                  {"auc", r.macro_auc},             {"auc_mean_of_classes", r.macro_auc_mean}};
    ordered_json cm = ordered_json::array();
    for (const auto& row : r.confusion.counts) cm.push_back(row);
    j["confusion_matrix"] = cm;
    j["warnings"] = r.warnings;
    return j.dump(2) + "\n";
}

std::string format_roc_csv(const RocCurve& curve) {
    std::string out = "fpr,tpr,threshold\n";
    for (const auto& p : curve.points) out += g17(p.fpr) + "," + g17(p.tpr) + "," + g17(p.threshold) + "\n";
    return out;
}

RocCurve parse_roc_csv(std::string_view text) {
    const csv::Table t = csv::parse(text);
    const std::size_t cf = t.column("fpr"), ct = t.column("tpr"), ch = t.column("threshold");
    RocCurve curve;
    for (const auto& row : t.rows) {
        auto value = [&](std::size_t col) {
            const std::string& s = row.fields[col];
            double v = 0.0;
            const char* b = s.data();
            const char* e = s.data() + s.size();
            if (b != e && *b == '+') ++b;
            auto [ptr, ec] = std::from_chars(b, e, v);
            if (ec != std::errc() || ptr != e) {
                throw ValidationError("ROC file line " + std::to_string(row.line) + ": not a number '" + s + "'");
            }
            return v;
        };
        curve.points.push_back({value(cf), value(ct), value(ch)});
    }
    return curve;
}

CommandOutput write_eval_outputs(const EvalReport& r, const fs::path& out_dir, TableFormat format) {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory '" + out_dir.string() + "': " + ec.message());

    CommandOutput out;
    const std::span<const EvalReport> one(&r, 1);
    write_output(out_dir / ("table1" + table_ext(format)), render_table1(one, format), out);
    write_output(out_dir / ("table2" + table_ext(format)), render_table2(one, format), out);
    write_output(out_dir / "confusion_matrix.csv", render_confusion_counts(r.confusion), out);
    write_output(out_dir / "confusion_matrix_normalized.csv", render_confusion_normalized(r.confusion), out);
    write_output(out_dir / "prf.csv", render_prf(r), out);
    write_output(out_dir / "metrics.json", render_metrics_json(r), out);

    std::vector<LabeledCurve> all;
    for (ClassId c : kAllClasses) {
        const auto& curve = r.class_curves[index_of(c)];
        if (!curve) continue;
        const std::string code(class_code(c));
        const std::string label =
            std::string(class_display_name(c)) + " (AUC " + format_percent(*r.class_auc[index_of(c)]) + "%)";
        write_output(out_dir / ("roc_" + code + ".csv"), format_roc_csv(*curve), out);
        const LabeledCurve lc{label, *curve, ""};
        SvgStyle style;
        style.title = r.model_name + ": " + std::string(class_display_name(c));
        write_output(out_dir / ("roc_" + code + ".svg"), emit_svg(std::span(&lc, 1), {}, style), out);
        all.push_back({label, *curve, ""});
    }
    write_output(out_dir / "roc_micro.csv", format_roc_csv(r.micro_curve), out);
    write_output(out_dir / "roc_macro.csv", format_roc_csv(r.macro_curve), out);
    all.push_back({"Micro (AUC " + format_percent(r.micro_auc) + "%)", r.micro_curve, "#000000"});
    all.push_back({"Macro (AUC " + format_percent(r.macro_auc) + "%)", r.macro_curve, "#555555"});
    SvgStyle style;
    style.title = r.model_name + ": ROC per class";
    write_output(out_dir / "roc_all.svg", emit_svg(all, {}, style), out);
    out.warnings = r.warnings;
    return out;
}

EvalReport eval_command(const fs::path& score_file, const EvalOptions& options, CommandOutput* output) {
    const ScoreMatrix m = read_scores(score_file);
    EvalReport report = evaluate(m, options.model_name.empty() ? score_file.stem().string() : options.model_name);
    CommandOutput written = write_eval_outputs(report, options.out_dir, options.format);
    if (output) *output = std::move(written);
    return report;
}

// ---------------------------------------------------------------------------

CompareReport compare(std::span<const NamedScores> models, std::span<const OperatorPoint> operators,
                      std::span<const ClassId> target_classes) {
    if (models.empty()) throw ValidationError("compare needs at least one score file");
    if (target_classes.empty()) throw ValidationError("compare needs at least one target class");
    CompareReport r;
    r.classes.assign(target_classes.begin(), target_classes.end());
    r.operator_points.assign(operators.begin(), operators.end());
    for (const auto& op : operators) {
        if (std::find(r.classes.begin(), r.classes.end(), op.target_class) == r.classes.end()) {
            throw ValidationError("operator point '" + op.name + "' targets " +
                                  std::string(class_code(op.target_class)) + ", which is not a compared class");
        }
    }
    for (ClassId c : r.classes) r.mean_points.push_back(mean_operator_point(operators, c));

    for (const auto& model : models) {
        validate_score_matrix(model.scores);
        r.models.push_back(model.name);
        for (std::size_t k = 0; k < r.classes.size(); ++k) {
            const ClassId c = r.classes[k];
            if (!roc_defined(model.scores, c)) {
                throw ValidationError("operator points target " + std::string(class_code(c)) +
                                      " but score set '" + model.name + "' has no positives or negatives for it");
            }
            ComparisonCell cell;
            cell.model = model.name;
            cell.target_class = c;
            cell.curve = roc_curve(model.scores, c);
            cell.model_auc = auc_trapezoid(cell.curve);
            cell.operator_auc = point_auc(r.mean_points[k]);
            cell.dominance = dominance_check(cell.curve, r.mean_points[k]);
            r.cells.push_back(std::move(cell));
        }
    }
    return r;
}

std::string render_table3(const CompareReport& r, TableFormat format) {
    std::vector<std::string> header = {"Classifier"};
    for (ClassId c : r.classes) header.emplace_back(class_display_name(c));
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> derm = {"Dermatologist"};
    for (const auto& p : r.mean_points) derm.push_back(format_percent(point_auc(p)));
    rows.push_back(std::move(derm));
    for (std::size_t m = 0; m < r.models.size(); ++m) {
        std::vector<std::string> row = {r.models[m]};
        for (std::size_t k = 0; k < r.classes.size(); ++k) {
            row.push_back(format_percent(r.cells[m * r.classes.size() + k].model_auc));
        }
        rows.push_back(std::move(row));
    }
    return render_table(header, rows, format);
}

std::string render_comparison_detail(const CompareReport& r) {
    std::string out =
        "model,target_class,model_auc,operator_auc,operator_sensitivity,operator_specificity,"
        "model_tpr_at_operator_fpr,verdict\n";
    for (const auto& cell : r.cells) {
        const auto k = static_cast<std::size_t>(
            std::find(r.classes.begin(), r.classes.end(), cell.target_class) - r.classes.begin());
        const auto& p = r.mean_points[k];
        out += csv::escape(cell.model) + "," + std::string(class_code(cell.target_class)) + "," + fixed6(cell.model_auc) +
               "," + fixed6(cell.operator_auc) + "," + fixed6(p.sensitivity) + "," + fixed6(p.specificity) + "," +
               fixed6(cell.dominance.tpr_at_operator_fpr) + "," + std::string(dominance_name(cell.dominance.verdict)) +
               "\n";
    }
    return out;
}

CompareReport compare_command(std::span<const fs::path> score_files, const fs::path& operator_file,
                              std::span<const ClassId> target_classes, const CompareOptions& options,
                              CommandOutput* output) {
    if (!options.model_names.empty() && options.model_names.size() != score_files.size()) {
        throw ValidationError("number of model names does not match number of score files");
    }
    std::vector<NamedScores> models;
    for (std::size_t i = 0; i < score_files.size(); ++i) {
        models.push_back({options.model_names.empty() ? score_files[i].stem().string() : options.model_names[i],
                          read_scores(score_files[i])});
    }
    std::vector<OperatorPoint> operators;
    try {
        operators = parse_operator_points(read_text_file(operator_file));
    } catch (const ValidationError& e) {
        throw ValidationError(operator_file.string() + ": " + e.what());
    }
    CompareReport report = compare(models, operators, target_classes);

    std::error_code ec;
    fs::create_directories(options.out_dir, ec);
    if (ec) throw IoError("cannot create output directory '" + options.out_dir.string() + "': " + ec.message());
    CommandOutput out;
    write_output(options.out_dir / ("table3" + table_ext(options.format)), render_table3(report, options.format), out);
    write_output(options.out_dir / "comparison.csv", render_comparison_detail(report), out);
    for (std::size_t k = 0; k < report.classes.size(); ++k) {
        const ClassId c = report.classes[k];
        std::vector<LabeledCurve> curves;
        for (std::size_t m = 0; m < report.models.size(); ++m) {
            const auto& cell = report.cells[m * report.classes.size() + k];
            curves.push_back({cell.model + " (AUC " + format_percent(cell.model_auc) + "%)", cell.curve, ""});
        }
        std::vector<OperatorPoint> points;
        for (const auto& p : report.operator_points) {
            if (p.target_class == c && p.name != "mean") points.push_back(p);
        }
        points.push_back(report.mean_points[k]);
        SvgStyle style;
        style.title = std::string(class_display_name(c)) + ": models vs dermatologists (mean AUC " +
                      format_percent(point_auc(report.mean_points[k])) + "%)";
        write_output(options.out_dir / ("roc_vs_operators_" + std::string(class_code(c)) + ".svg"),
                     emit_svg(curves, points, style), out);
    }
    if (output) *output = std::move(out);
    return report;
}

}  // namespace dermbench
