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
#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "dermbench/error.hpp"
#include "dermbench/metrics.hpp"
#include "support/oracles.hpp"

using namespace dermbench;
using dermbench::testing::one_vs_rest;
using dermbench::testing::pair_count_auc;
using dermbench::testing::random_tied_scores;

namespace {

const std::string kHeader = "image_id,true_label,MEL,NV,BCC,AKIEC,BKL,DF,VASC,ATYP_NV\n";

ScoreMatrix onehot(std::initializer_list<int> truths, std::initializer_list<int> predictions) {
    ScoreMatrix m;
    auto t = truths.begin();
    auto p = predictions.begin();
    for (std::size_t i = 0; t != truths.end(); ++t, ++p, ++i) {
        ScoreRow row{};
        row[static_cast<std::size_t>(*p)] = 1.0;
        m.image_ids.push_back("x" + std::to_string(i));
        m.truths.push_back(class_from_index(static_cast<std::size_t>(*t)));
        m.scores.push_back(row);
    }
    return m;
}

// Counting definition of the ROC: every distinct score is a threshold and the
// rates come from counting samples at or above it. Each fpr keeps the lowest
// and highest tpr reached there; interpolation runs from the highest tpr at the
// left node to the lowest at the right node, and an exact hit takes the highest.
using Span = std::pair<double, double>;

std::map<double, Span> counted_roc(std::span<const double> s, std::span<const std::uint8_t> pos) {
    std::set<double> thresholds(s.begin(), s.end());
    double np = 0, nn = 0;
    for (auto p : pos) (p ? np : nn) += 1;
    std::map<double, Span> pts{{0.0, {0.0, 0.0}}};
    for (double t : thresholds) {
        double tp = 0, fp = 0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] >= t) (pos[i] ? tp : fp) += 1;
        }
        auto [it, fresh] = pts.try_emplace(fp / nn, Span{tp / np, tp / np});
        it->second.first = std::min(it->second.first, tp / np);
        it->second.second = std::max(it->second.second, tp / np);
    }
    return pts;
}

double interp(const std::map<double, Span>& f, double x) {
    auto hi = f.lower_bound(x);
    if (hi != f.end() && hi->first == x) return hi->second.second;
    auto lo = std::prev(hi);
    const double y0 = lo->second.second, y1 = hi->second.first;
    return y0 + (y1 - y0) * (x - lo->first) / (hi->first - lo->first);
}

double macro_oracle(const ScoreMatrix& m) {
    std::vector<std::map<double, Span>> curves;
    std::set<double> grid;
    for (ClassId c : kAllClasses) {
        auto pos = one_vs_rest(m, c);
        const auto npos = std::count(pos.begin(), pos.end(), 1);
        if (npos == 0 || npos == static_cast<long>(pos.size())) continue;
        curves.push_back(counted_roc(m.column(c), pos));
        for (auto& entry : curves.back()) grid.insert(entry.first);
    }
    std::vector<double> xs(grid.begin(), grid.end()), ys;
    for (double x : xs) {
        double sum = 0;
        for (auto& c : curves) sum += interp(c, x);
        ys.push_back(sum / static_cast<double>(curves.size()));
    }
    double area = 0;
    for (std::size_t i = 1; i < xs.size(); ++i) area += (xs[i] - xs[i - 1]) * (ys[i] + ys[i - 1]) / 2;
    return area;
}

}  // namespace

TEST_CASE("score file validation") {
    SUBCASE("well formed") {
        auto m = parse_scores(kHeader + "a,MEL,1,0,0,0,0,0,0,0\nb,ATYP_NV,0,0,0,0,0,0,0.5,0.5\n");
        REQUIRE(m.size() == 2);
        CHECK(m.truths[1] == ClassId::ATYP_NV);
        CHECK(m.column(ClassId::VASC)[1] == 0.5);
    }
    SUBCASE("row sum within tolerance") {
        CHECK_NOTHROW(parse_scores(kHeader + "a,MEL,0.99995,0,0,0,0,0,0,0\n"));
    }
    SUBCASE("row sum off by more than tolerance names the line") {
        try {
            parse_scores(kHeader + "a,MEL,1,0,0,0,0,0,0,0\nb,NV,0.5,0.48,0,0,0,0,0,0\n");
            FAIL("expected ValidationError");
        } catch (const ValidationError& e) {
            CHECK(std::string(e.what()).find("line 3") != std::string::npos);
        }
    }
    SUBCASE("rejections") {
        CHECK_THROWS_AS(parse_scores(kHeader), ValidationError);
        CHECK_THROWS_AS(parse_scores("image_id,true_label,NV,MEL,BCC,AKIEC,BKL,DF,VASC,ATYP_NV\n"), ValidationError);
        CHECK_THROWS_AS(parse_scores(kHeader + "a,SCC,1,0,0,0,0,0,0,0\n"), ValidationError);
        CHECK_THROWS_AS(parse_scores(kHeader + "a,MEL,nan,0,0,0,0,0,0,1\n"), ValidationError);
        CHECK_THROWS_AS(parse_scores(kHeader + "a,MEL,1.5,-0.5,0,0,0,0,0,0\n"), ValidationError);
        CHECK_THROWS_AS(parse_scores(kHeader + "a,MEL,1,0,0,0,0,0,0,0\na,NV,0,1,0,0,0,0,0,0\n"), ValidationError);
        CHECK_THROWS_AS(parse_scores(kHeader + "a,MEL,1,0,0,0,0,0,0\n"), ValidationError);
    }
    SUBCASE("format round trip is exact") {
        std::mt19937_64 rng(5);
        auto m = random_tied_scores(rng, 40);
        auto back = parse_scores(format_scores(m));
        CHECK(back.scores == m.scores);
        CHECK(back.truths == m.truths);
        CHECK(back.image_ids == m.image_ids);
    }
}

TEST_CASE("argmax breaks ties toward the lower index") {
    CHECK(argmax(ScoreRow{0, 0.5, 0.5, 0, 0, 0, 0, 0}) == ClassId::NV);
    CHECK(argmax(ScoreRow{0.125, 0.125, 0.125, 0.125, 0.125, 0.125, 0.125, 0.125}) == ClassId::MEL);
}

TEST_CASE("confusion matrix and per-class PRF") {
    auto m = onehot({0, 0, 1, 1, 1}, {0, 1, 1, 1, 0});
    auto cm = confusion_matrix(m);
    CHECK(cm.at(ClassId::MEL, ClassId::MEL) == 1);
    CHECK(cm.at(ClassId::MEL, ClassId::NV) == 1);
    CHECK(cm.at(ClassId::NV, ClassId::NV) == 2);
    CHECK(cm.at(ClassId::NV, ClassId::MEL) == 1);
    CHECK(cm.total() == 5);
    CHECK(cm.trace() == 3);
    CHECK(cm.support(ClassId::NV) == 3);
    CHECK(cm.predicted(ClassId::MEL) == 2);
    auto norm = cm.row_normalized();
    CHECK(norm[1][1] == doctest::Approx(2.0 / 3));
    CHECK(norm[2][2] == 0.0);

    auto nv = per_class_prf(cm, ClassId::NV);
    CHECK(nv.precision == doctest::Approx(2.0 / 3));
    CHECK(nv.recall == doctest::Approx(2.0 / 3));
    auto bcc = per_class_prf(cm, ClassId::BCC);
    CHECK(bcc.degenerate);
    CHECK(bcc.precision_undefined);
}

TEST_CASE("PRF from counts") {
    auto t = prf_from_counts(3, 1, 2);
    CHECK(t.precision == 0.75);
    CHECK(t.recall == 0.6);
    CHECK(t.f1 == doctest::Approx(2.0 / 3).epsilon(1e-15));
    auto never_predicted = prf_from_counts(0, 0, 4);
    CHECK(never_predicted.precision == 0.0);
    CHECK(never_predicted.precision_undefined);
    CHECK_FALSE(never_predicted.degenerate);
    CHECK(never_predicted.f1 == 0.0);
    auto empty = prf_from_counts(0, 3, 0);
    CHECK(empty.degenerate);
}

TEST_CASE("micro precision, recall and F1 equal accuracy") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        auto m = random_tied_scores(rng, 1 + trial % 50);
        auto cm = confusion_matrix(m);
        auto micro = micro_average(cm);
        const double acc = static_cast<double>(cm.trace()) / static_cast<double>(cm.total());
        REQUIRE(std::abs(micro.precision - acc) <= 1e-15);
        REQUIRE(std::abs(micro.recall - acc) <= 1e-15);
        REQUIRE(std::abs(micro.f1 - acc) <= 1e-15);
    }
}

TEST_CASE("macro average excludes degenerate classes by default") {
    std::vector<PrfTriple> t{prf_from_counts(1, 0, 1), prf_from_counts(0, 0, 0), prf_from_counts(1, 1, 0)};
    auto macro = macro_average(t);
    CHECK(macro.included == std::vector<std::size_t>{0, 2});
    CHECK(macro.excluded == std::vector<std::size_t>{1});
    CHECK(macro.warnings.size() == 1);
    CHECK(macro.precision == doctest::Approx(0.75));
    CHECK(macro.recall == doctest::Approx(0.75));
    auto all = macro_average(t, true);
    CHECK(all.included.size() == 3);
    CHECK(all.precision == doctest::Approx(0.5));

    std::vector<PrfTriple> none{prf_from_counts(0, 0, 0)};
    CHECK_THROWS_AS(macro_average(none), ValidationError);
}

TEST_CASE("ROC worked examples") {
    SUBCASE("perfect separation") {
        std::vector<double> s{0.9, 0.8, 0.2, 0.1};
        std::vector<std::uint8_t> p{1, 1, 0, 0};
        auto c = roc_from_binary(s, p);
        CHECK(auc_trapezoid(c) == 1.0);
        CHECK(c.points.front().fpr == 0.0);
        CHECK(std::isinf(c.points.front().threshold));
        CHECK(c.points.back().fpr == 1.0);
        CHECK(c.points.back().tpr == 1.0);
    }
    SUBCASE("one inversion") {
        std::vector<double> s{0.9, 0.4, 0.5, 0.1};
        std::vector<std::uint8_t> p{1, 1, 0, 0};
        CHECK(auc_trapezoid(roc_from_binary(s, p)) == 0.75);
    }
    SUBCASE("tied block is one diagonal step") {
        std::vector<double> s{0.5, 0.5, 0.5, 0.5};
        std::vector<std::uint8_t> p{1, 0, 1, 0};
        auto c = roc_from_binary(s, p);
        REQUIRE(c.points.size() == 2);
        CHECK(auc_trapezoid(c) == 0.5);
    }
    SUBCASE("undefined") {
        std::vector<double> s{0.1, 0.2};
        std::vector<std::uint8_t> all_pos{1, 1}, all_neg{0, 0};
        CHECK_THROWS_AS(roc_from_binary(s, all_pos), ValidationError);
        CHECK_THROWS_AS(roc_from_binary(s, all_neg), ValidationError);
        std::vector<double> bad{0.1, std::nan("")};
        std::vector<std::uint8_t> mixed{1, 0};
        CHECK_THROWS_AS(roc_from_binary(bad, mixed), ValidationError);
    }
}

TEST_CASE("trapezoid AUC equals the pair-counting statistic") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 300; ++trial) {
        auto m = random_tied_scores(rng, 2 + trial % 40, 1 + trial % 5);
        for (ClassId c : kAllClasses) {
            if (!roc_defined(m, c)) continue;
            auto pos = one_vs_rest(m, c);
            const auto col = m.column(c);
            REQUIRE(std::abs(auc_trapezoid(roc_curve(m, c)) - pair_count_auc(col, pos)) <= 1e-12);
        }
    }
}

TEST_CASE("ROC curves are monotone and bounded") {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 100; ++trial) {
        auto m = random_tied_scores(rng, 30);
        for (ClassId c : kAllClasses) {
            if (!roc_defined(m, c)) continue;
            auto curve = roc_curve(m, c);
            for (std::size_t i = 1; i < curve.points.size(); ++i) {
                REQUIRE(curve.points[i].fpr >= curve.points[i - 1].fpr);
                REQUIRE(curve.points[i].tpr >= curve.points[i - 1].tpr);
                REQUIRE(curve.points[i].threshold < curve.points[i - 1].threshold);
            }
            const double auc = auc_trapezoid(curve);
            REQUIRE(auc >= 0.0);
            REQUIRE(auc <= 1.0);
        }
    }
}

TEST_CASE("negating scores mirrors the AUC") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        auto m = random_tied_scores(rng, 25);
        for (ClassId c : kAllClasses) {
            if (!roc_defined(m, c)) continue;
            auto pos = one_vs_rest(m, c);
            auto col = m.column(c);
            const double auc = auc_trapezoid(roc_from_binary(col, pos));
            for (auto& v : col) v = 1.0 - v;
            REQUIRE(std::abs(auc_trapezoid(roc_from_binary(col, pos)) - (1.0 - auc)) <= 1e-12);
        }
    }
}

TEST_CASE("micro ROC pools every (sample, class) pair") {
    ScoreMatrix uniform;
    for (std::size_t i = 0; i < 8; ++i) {
        ScoreRow row;
        row.fill(0.125);
        uniform.image_ids.push_back("u" + std::to_string(i));
        uniform.truths.push_back(class_from_index(i));
        uniform.scores.push_back(row);
    }
    CHECK(auc_trapezoid(micro_roc(uniform)) == 0.5);

    auto perfect = onehot({0, 1, 2, 3, 4, 5, 6, 7}, {0, 1, 2, 3, 4, 5, 6, 7});
    CHECK(auc_trapezoid(micro_roc(perfect)) == 1.0);

    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 50; ++trial) {
        auto m = random_tied_scores(rng, 3);
        std::vector<double> flat;
        std::vector<std::uint8_t> pos;
        for (std::size_t i = 0; i < m.size(); ++i) {
            for (std::size_t c = 0; c < kNumClasses; ++c) {
                flat.push_back(m.scores[i][c]);
                pos.push_back(index_of(m.truths[i]) == c);
            }
        }
        REQUIRE(std::abs(auc_trapezoid(micro_roc(m)) - pair_count_auc(flat, pos)) <= 1e-12);
    }
}

TEST_CASE("interpolate_tpr takes the top of vertical steps") {
    RocCurve c{{{0, 0, 0}, {0, 0.4, 0}, {0.5, 0.4, 0}, {0.5, 0.8, 0}, {1, 1, 0}}};
    CHECK(interpolate_tpr(c, 0.0) == 0.4);
    CHECK(interpolate_tpr(c, 0.25) == 0.4);
    CHECK(interpolate_tpr(c, 0.5) == 0.8);
    CHECK(interpolate_tpr(c, 0.75) == doctest::Approx(0.9));
    CHECK(interpolate_tpr(c, 1.0) == 1.0);
}

TEST_CASE("macro ROC AUC") {
    SUBCASE("identical diagonal curves") {
        ScoreMatrix m;
        for (std::size_t i = 0; i < 16; ++i) {
            ScoreRow row;
            row.fill(0.125);
            m.image_ids.push_back("d" + std::to_string(i));
            m.truths.push_back(class_from_index(i % 8));
            m.scores.push_back(row);
        }
        auto r = macro_roc_auc(m);
        CHECK(r.auc_interpolated == 0.5);
        CHECK(r.auc_mean == 0.5);
    }
    SUBCASE("identical perfect curves") {
        auto r = macro_roc_auc(onehot({0, 1, 2, 3, 4, 5, 6, 7}, {0, 1, 2, 3, 4, 5, 6, 7}));
        CHECK(r.auc_interpolated == 1.0);
        CHECK(r.auc_mean == 1.0);
        CHECK(r.included.size() == 8);
        CHECK(r.curve.points.front().tpr == 0.0);
    }
    SUBCASE("classes without positives are excluded") {
        auto r = macro_roc_auc(onehot({0, 0, 1, 1}, {0, 1, 1, 0}));
        CHECK(r.included == std::vector<ClassId>{ClassId::MEL, ClassId::NV});
        CHECK(r.excluded.size() == 6);
        CHECK(r.warnings.size() == 6);
        CHECK_THROWS_AS(macro_roc_auc(onehot({2, 2}, {2, 2})), ValidationError);
    }
    SUBCASE("matches a counting oracle on the union grid") {
        std::mt19937_64 rng(31);
        for (int trial = 0; trial < 200; ++trial) {
            auto m = random_tied_scores(rng, 4 + trial % 60);
            bool any = false;
            for (ClassId c : kAllClasses) any = any || roc_defined(m, c);
            if (!any) continue;
            REQUIRE(std::abs(macro_roc_auc(m).auc_interpolated - macro_oracle(m)) <= 1e-12);
        }
    }
}

TEST_CASE("operator points") {
    auto pts = parse_operator_points(
        "name,target_class,sensitivity,specificity\n"
        "d1,MEL,0.8,0.6\nd2,MEL,0.6,0.8\nd3,BCC,0.9,0.9\n");
    REQUIRE(pts.size() == 3);
    auto mean = mean_operator_point(pts, ClassId::MEL);
    CHECK(mean.name == "mean");
    CHECK(mean.sensitivity == doctest::Approx(0.7));
    CHECK(mean.specificity == doctest::Approx(0.7));
    CHECK_THROWS_AS(mean_operator_point(pts, ClassId::NV), ValidationError);
    CHECK_THROWS_AS(parse_operator_points("name,target_class,sensitivity,specificity\nd,MEL,1.2,0.5\n"),
                    ValidationError);
    CHECK_THROWS_AS(parse_operator_points("name,target_class,sensitivity,specificity\nd,XYZ,0.2,0.5\n"),
                    ValidationError);
    CHECK_THROWS_AS(parse_operator_points("name,target_class,sensitivity\nd,MEL,0.2\n"), ValidationError);
}

TEST_CASE("point AUC is the area under the three-point curve") {
    for (int si = 0; si <= 20; ++si) {
        for (int pi = 0; pi <= 20; ++pi) {
            OperatorPoint p{"p", ClassId::MEL, si / 20.0, pi / 20.0};
            REQUIRE(std::abs(point_auc(p) - auc_trapezoid(operator_curve(p))) <= 1e-15);
        }
    }
    CHECK(point_auc({"x", ClassId::MEL, 0.8226, 0.8226}) == doctest::Approx(0.8226));
}

TEST_CASE("dominance") {
    const RocCurve diagonal{{{0, 0, 1}, {1, 1, 0}}};
    const RocCurve perfect{{{0, 0, 2}, {0, 1, 1}, {1, 1, 0}}};
    auto r = dominance_check(perfect, {"d", ClassId::MEL, 0.9, 0.9});
    CHECK(r.verdict == Dominance::ModelDominates);
    CHECK(r.tpr_at_operator_fpr == 1.0);
    CHECK(dominance_check(diagonal, {"d", ClassId::MEL, 0.9, 0.9}).verdict == Dominance::OperatorDominates);
    CHECK(dominance_check(diagonal, {"d", ClassId::MEL, 0.5, 0.5}).verdict == Dominance::Indeterminate);
    CHECK(dominance_name(Dominance::ModelDominates) == "model_dominates");
}
