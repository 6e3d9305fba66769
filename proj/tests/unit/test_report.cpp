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

#include <cmath>

#include "doctest.h"
#include "dermbench/error.hpp"
#include "dermbench/fileio.hpp"
#include "dermbench/report.hpp"
#include "dermbench/svg.hpp"
#include "support/temp_dir.hpp"

using namespace dermbench;
using dermbench::testing::fixture;
using dermbench::testing::TempDir;

namespace {

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }
std::string line_at(const std::string& s, std::size_t n) {
    std::size_t pos = 0;
    for (std::size_t i = 0; i < n; ++i) pos = s.find('\n', pos) + 1;
    return s.substr(pos, s.find('\n', pos) - pos);
}

}  // namespace

TEST_CASE("percent formatting rounds to two decimals") {
    CHECK(format_percent(1.0) == "100.00");
    CHECK(format_percent(0.0) == "0.00");
    CHECK(format_percent(0.8226) == "82.26");
    CHECK(format_percent(0.98125) == "98.13");
    CHECK(format_percent(0.5) == "50.00");
    CHECK(format_percent(0.123449) == "12.34");
    CHECK(parse_table_format("md") == TableFormat::Markdown);
    CHECK_THROWS_AS(parse_table_format("xlsx"), ValidationError);
}

TEST_CASE("perfect one-hot scores render an all-100 row") {
    auto r = evaluate(read_scores(fixture("scores/perfect_onehot.csv")), "oracle");
    const std::string t1 = render_table1(std::span(&r, 1), TableFormat::Csv);
    CHECK(first_line(t1) == "Algorithm,Mel,NV,BCC,AKIEC,BK,DF,VASC,Atyp NV,Macro,Micro");
    CHECK(line_at(t1, 1) == "oracle,100.00,100.00,100.00,100.00,100.00,100.00,100.00,100.00,100.00,100.00");
    const std::string t2 = render_table2(std::span(&r, 1), TableFormat::Csv);
    CHECK(first_line(t2) == "Classifier,Precision Micro,Precision Macro,F1 Micro,F1 Macro,ROC AUC Micro,ROC AUC Macro");
    CHECK(line_at(t2, 1) == "oracle,100.00,100.00,100.00,100.00,100.00,100.00");
    for (ClassId t : kAllClasses) {
        for (ClassId p : kAllClasses) {
            if (t != p) REQUIRE(r.confusion.at(t, p) == 0);
        }
        CHECK(r.confusion.at(t, t) == 5);
    }
    CHECK(r.warnings.empty());
}

TEST_CASE("uniform scores sit on the chance line") {
    auto r = evaluate(read_scores(fixture("scores/uniform.csv")), "coin");
    for (const auto& auc : r.class_auc) CHECK(*auc == 0.5);
    CHECK(r.micro_auc == 0.5);
    CHECK(r.macro_auc == 0.5);
    // Every argmax is MEL.
    CHECK(r.confusion.predicted(ClassId::MEL) == r.samples);
}

TEST_CASE("missing classes render as NA and are flagged") {
    auto m = parse_scores(
        "image_id,true_label,MEL,NV,BCC,AKIEC,BKL,DF,VASC,ATYP_NV\n"
        "a,MEL,0.9,0.1,0,0,0,0,0,0\nb,NV,0.2,0.8,0,0,0,0,0,0\nc,NV,0.6,0.4,0,0,0,0,0,0\n");
    auto r = evaluate(m, "small");
    CHECK(line_at(render_table1(std::span(&r, 1), TableFormat::Csv), 1) ==
          "small,100.00,100.00,NA,NA,NA,NA,NA,NA,100.00," + format_percent(r.micro_auc));
    CHECK(r.macro.included.size() == 2);
    CHECK_FALSE(r.warnings.empty());
}

TEST_CASE("markdown tables") {
    auto r = evaluate(read_scores(fixture("scores/perfect_onehot.csv")), "oracle");
    const std::string md = render_table1(std::span(&r, 1), TableFormat::Markdown);
    CHECK(first_line(md) == "| Algorithm | Mel | NV | BCC | AKIEC | BK | DF | VASC | Atyp NV | Macro | Micro |");
    CHECK(line_at(md, 1).starts_with("| --- | ---: |"));
}

TEST_CASE("ROC CSV round trip is exact") {
    auto m = read_scores(fixture("scores/model_a.csv"));
    auto curve = roc_curve(m, ClassId::MEL);
    CHECK(parse_roc_csv(format_roc_csv(curve)) == curve);
    CHECK(first_line(format_roc_csv(curve)) == "fpr,tpr,threshold");
}

TEST_CASE("SVG output") {
    auto m = read_scores(fixture("scores/model_a.csv"));
    std::vector<LabeledCurve> curves{{"MEL", roc_curve(m, ClassId::MEL), ""}, {"micro", micro_roc(m), ""}};
    std::vector<OperatorPoint> points{{"derm_1", ClassId::MEL, 0.74, 0.88}, {"mean", ClassId::MEL, 0.77, 0.88}};
    SvgStyle style;
    style.title = "model_a";
    const std::string a = emit_svg(curves, points, style);
    const std::string b = emit_svg(curves, points, style);
    CHECK(a == b);
    CHECK(a.starts_with("<?xml"));
    CHECK(a.find("class=\"roc\"") != std::string::npos);
    CHECK(a.find("#2ca02c") != std::string::npos);
    CHECK(a.find("</svg>") != std::string::npos);

    const std::string empty = emit_svg({}, {}, {});
    CHECK(empty.find("<svg") != std::string::npos);
    CHECK(empty.find("class=\"roc\"") == std::string::npos);
}

TEST_CASE("eval command writes the full output set") {
    TempDir out;
    CommandOutput files;
    EvalOptions opt;
    opt.out_dir = out.path();
    auto r = eval_command(fixture("scores/model_a.csv"), opt, &files);
    CHECK(r.model_name == "model_a");
    for (const char* name : {"table1.csv", "table2.csv", "confusion_matrix.csv", "confusion_matrix_normalized.csv",
                             "prf.csv", "metrics.json", "roc_MEL.csv", "roc_ATYP_NV.svg", "roc_micro.csv",
                             "roc_macro.csv", "roc_all.svg"}) {
        CHECK_MESSAGE(std::filesystem::exists(out / name), name);
    }
    const std::string json = read_text_file(out / "metrics.json");
    CHECK(json.find("\"model\"") != std::string::npos);

    TempDir again;
    opt.out_dir = again.path();
    eval_command(fixture("scores/model_a.csv"), opt);
    CHECK(read_text_file(out / "roc_all.svg") == read_text_file(again / "roc_all.svg"));
    CHECK(read_text_file(out / "metrics.json") == read_text_file(again / "metrics.json"));

    CHECK_THROWS_AS(eval_command(fixture("scores/bad_rowsum.csv"), opt), ValidationError);
    CHECK_THROWS_AS(eval_command(fixture("scores/absent.csv"), opt), IoError);
}

TEST_CASE("compare against dermatologist operating points") {
    TempDir out;
    std::vector<std::filesystem::path> files{fixture("scores/model_a.csv"), fixture("scores/model_b.csv")};
    std::vector<ClassId> classes{ClassId::MEL, ClassId::BCC};
    CompareOptions opt;
    opt.out_dir = out.path();
    auto r = compare_command(files, fixture("operators_table3.csv"), classes, opt);
    const std::string t3 = render_table3(r, TableFormat::Csv);
    CHECK(first_line(t3) == "Classifier,Mel,BCC");
    CHECK(line_at(t3, 1) == "Dermatologist,82.26,88.82");
    CHECK(line_at(t3, 2).starts_with("model_a,"));
    CHECK(line_at(t3, 3).starts_with("model_b,"));
    REQUIRE(r.cells.size() == 4);
    for (const auto& cell : r.cells) {
        const auto expected = auc_trapezoid(roc_curve(read_scores(fixture("scores/" + cell.model + ".csv")),
                                                      cell.target_class));
        CHECK(cell.model_auc == expected);
    }
    CHECK(std::filesystem::exists(out / "table3.csv"));
    CHECK(std::filesystem::exists(out / "comparison.csv"));
    CHECK(std::filesystem::exists(out / "roc_vs_operators_MEL.svg"));
    CHECK(std::filesystem::exists(out / "roc_vs_operators_BCC.svg"));

    std::vector<ClassId> nv{ClassId::NV};
    CHECK_THROWS_AS(compare_command(files, fixture("operators_table3.csv"), nv, opt), ValidationError);
}

namespace {

std::string attr(const std::string& doc, std::size_t from, const std::string& name) {
    const std::size_t start = doc.find(name + "=\"", from) + name.size() + 2;
    return doc.substr(start, doc.find('"', start) - start);
}

}  // namespace

TEST_CASE("a diagonal curve runs corner to corner of the plot frame") {
    const RocCurve diagonal{{{0, 0, 1}, {1, 1, 0}}};
    std::vector<LabeledCurve> curves{{"chance", diagonal, "#000000"}};
    const std::string svg = emit_svg(curves, {}, {});
    const std::size_t chance = svg.find("id=\"chance\"");
    REQUIRE(chance != std::string::npos);
    const std::string expected = attr(svg, chance, "x1") + "," + attr(svg, chance, "y1") + " " +
                                 attr(svg, chance, "x2") + "," + attr(svg, chance, "y2");
    CHECK(attr(svg, svg.find("class=\"roc\""), "points") == expected);
}

TEST_CASE("perfect model dominates an operator point") {
    std::vector<NamedScores> models{{"perfect", read_scores(fixture("scores/perfect_onehot.csv"))}};
    std::vector<OperatorPoint> ops{{"derm", ClassId::MEL, 0.8, 0.8}};
    std::vector<ClassId> mel{ClassId::MEL};
    auto r = compare(models, ops, mel);
    REQUIRE(r.cells.size() == 1);
    CHECK(r.cells[0].model_auc == 1.0);
    CHECK(r.cells[0].operator_auc == doctest::Approx(0.8));
    CHECK(r.cells[0].dominance.verdict == Dominance::ModelDominates);
}

TEST_CASE("identical score files give identical rows") {
    const auto m = read_scores(fixture("scores/model_b.csv"));
    std::vector<NamedScores> models{{"x", m}, {"x", m}};
    std::vector<ClassId> classes{ClassId::MEL, ClassId::BCC};
    const auto ops = parse_operator_points(read_text_file(fixture("operators_table3.csv")));
    const std::string t3 = render_table3(compare(models, ops, classes), TableFormat::Csv);
    CHECK(line_at(t3, 2) == line_at(t3, 3));
}
