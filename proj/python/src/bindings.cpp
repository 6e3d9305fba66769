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

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "dermbench/dataset.hpp"
#include "dermbench/error.hpp"
#include "dermbench/metrics.hpp"
#include "dermbench/preprocess.hpp"
#include "dermbench/report.hpp"
#include "dermbench/splitter.hpp"

namespace py = pybind11;
using namespace dermbench;

namespace {

ClassId to_class(const py::handle& h) {
    if (py::isinstance<ClassId>(h)) return h.cast<ClassId>();
    if (py::isinstance<py::int_>(h)) return class_from_index(h.cast<std::size_t>());
    return parse_class(h.cast<std::string>());
}

ScoreMatrix make_scores(const std::vector<std::string>& ids, const py::sequence& truths,
                        py::array_t<double, py::array::c_style | py::array::forcecast> scores) {
    if (scores.ndim() != 2 || static_cast<std::size_t>(scores.shape(1)) != kNumClasses) {
        throw ValidationError("scores must have shape (N, 8)");
    }
    const auto n = static_cast<std::size_t>(scores.shape(0));
    if (ids.size() != n || static_cast<std::size_t>(py::len(truths)) != n) {
        throw ValidationError("image_ids, truths and scores differ in length");
    }
    ScoreMatrix m;
    m.image_ids = ids;
    auto s = scores.unchecked<2>();
    for (std::size_t i = 0; i < n; ++i) {
        m.truths.push_back(to_class(truths[i]));
        ScoreRow row{};
        for (std::size_t c = 0; c < kNumClasses; ++c) row[c] = s(static_cast<py::ssize_t>(i), static_cast<py::ssize_t>(c));
        m.scores.push_back(row);
    }
    validate_score_matrix(m);
    return m;
}

py::array_t<double> curve_to_array(const RocCurve& curve) {
    py::array_t<double> out({static_cast<py::ssize_t>(curve.points.size()), py::ssize_t{3}});
    auto a = out.mutable_unchecked<2>();
    for (std::size_t i = 0; i < curve.points.size(); ++i) {
        const auto k = static_cast<py::ssize_t>(i);
        a(k, 0) = curve.points[i].fpr;
        a(k, 1) = curve.points[i].tpr;
        a(k, 2) = curve.points[i].threshold;
    }
    return out;
}

RocCurve array_to_curve(py::array_t<double, py::array::c_style | py::array::forcecast> arr) {
    if (arr.ndim() != 2 || arr.shape(1) < 2) throw ValidationError("curve must have shape (K, 2) or (K, 3)");
    auto a = arr.unchecked<2>();
    RocCurve curve;
    for (py::ssize_t i = 0; i < arr.shape(0); ++i) {
        curve.points.push_back({a(i, 0), a(i, 1), arr.shape(1) > 2 ? a(i, 2) : 0.0});
    }
    return curve;
}

py::array_t<std::uint64_t> confusion_to_array(const ConfusionMatrix& cm) {
    py::array_t<std::uint64_t> out({py::ssize_t{kNumClasses}, py::ssize_t{kNumClasses}});
    auto a = out.mutable_unchecked<2>();
    for (std::size_t r = 0; r < kNumClasses; ++r) {
        for (std::size_t c = 0; c < kNumClasses; ++c) a(static_cast<py::ssize_t>(r), static_cast<py::ssize_t>(c)) = cm.counts[r][c];
    }
    return out;
}

ConfusionMatrix array_to_confusion(py::array_t<std::uint64_t, py::array::c_style | py::array::forcecast> arr) {
    if (arr.ndim() != 2 || arr.shape(0) != kNumClasses || arr.shape(1) != kNumClasses) {
        throw ValidationError("confusion matrix must have shape (8, 8)");
    }
    auto a = arr.unchecked<2>();
    ConfusionMatrix cm;
    for (std::size_t r = 0; r < kNumClasses; ++r) {
        for (std::size_t c = 0; c < kNumClasses; ++c) cm.counts[r][c] = a(static_cast<py::ssize_t>(r), static_cast<py::ssize_t>(c));
    }
    return cm;
}

py::dict split_report_dict(const SplitReport& r) {
    py::dict d;
    py::dict counts;
    for (std::size_t s = 0; s < kNumSplits; ++s) {
        py::dict per_class;
        for (ClassId c : kAllClasses) per_class[py::str(std::string(class_code(c)))] = r.counts[s][index_of(c)];
        counts[py::str(std::string(split_name(static_cast<Split>(s))))] = per_class;
    }
    d["counts"] = counts;
    d["totals"] = r.totals;
    d["fractions"] = r.fractions;
    d["has_lesion_ids"] = r.has_lesion_ids;
    d["leakage"] = r.leakage;
    d["leaked_lesions"] = r.leaked_lesions;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Dermoscopy classification benchmarking: datasets, splits, resizing and metrics.";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);

    py::enum_<ClassId>(m, "ClassId")
        .value("MEL", ClassId::MEL)
        .value("NV", ClassId::NV)
        .value("BCC", ClassId::BCC)
        .value("AKIEC", ClassId::AKIEC)
        .value("BKL", ClassId::BKL)
        .value("DF", ClassId::DF)
        .value("VASC", ClassId::VASC)
        .value("ATYP_NV", ClassId::ATYP_NV);
    m.attr("CLASS_CODES") = [] {
        std::vector<std::string> codes;
        for (ClassId c : kAllClasses) codes.emplace_back(class_code(c));
        return codes;
    }();

    py::enum_<Source>(m, "Source").value("HAM10000", Source::HAM10000).value("PH2", Source::PH2);
    py::enum_<Split>(m, "Split").value("TRAIN", Split::TRAIN).value("VAL", Split::VAL).value("TEST", Split::TEST);

    py::class_<ManifestRecord>(m, "ManifestRecord")
        .def(py::init<>())
        .def_readwrite("image_id", &ManifestRecord::image_id)
        .def_readwrite("path", &ManifestRecord::path)
        .def_readwrite("source", &ManifestRecord::source)
        .def_readwrite("label", &ManifestRecord::label)
        .def_readwrite("lesion_id", &ManifestRecord::lesion_id)
        .def_readwrite("split", &ManifestRecord::split)
        .def_readwrite("checksum", &ManifestRecord::checksum)
        .def("__repr__", [](const ManifestRecord& r) {
            return "<ManifestRecord " + r.image_id + " " + std::string(class_code(r.label)) + ">";
        });

    py::class_<DatasetSummary>(m, "DatasetSummary")
        .def_readonly("total", &DatasetSummary::total)
        .def("count", [](const DatasetSummary& s, const py::handle& c) { return s.count(to_class(c)); })
        .def("as_dict", [](const DatasetSummary& s) {
            py::dict d;
            for (ClassId c : kAllClasses) d[py::str(std::string(class_code(c)))] = s.count(c);
            return d;
        });

    auto ingest_opts = [](bool skip_missing) {
        IngestOptions o;
        if (skip_missing) o.missing_images = MissingImagePolicy::Skip;
        return o;
    };
    m.def(
        "ingest_ham10000",
        [ingest_opts](const std::filesystem::path& meta, const std::filesystem::path& images, bool skip_missing) {
            return ingest_ham10000(meta, images, ingest_opts(skip_missing)).records;
        },
        py::arg("metadata_file"), py::arg("image_dir"), py::arg("skip_missing") = false);
    m.def(
        "ingest_ph2",
        [ingest_opts](const std::filesystem::path& index, const std::filesystem::path& images, bool all_classes,
                      bool skip_missing) {
            return ingest_ph2(index, images, all_classes ? ClassSet::all() : kDefaultPh2Selection,
                              ingest_opts(skip_missing))
                .records;
        },
        py::arg("index_file"), py::arg("image_dir"), py::arg("all_classes") = false, py::arg("skip_missing") = false);
    m.def("merge_manifests", &merge_manifests, py::arg("a"), py::arg("b"));
    m.def("summarize", &summarize, py::arg("manifest"));
    m.def("read_manifest", &read_manifest, py::arg("path"));
    m.def("write_manifest", &write_manifest, py::arg("path"), py::arg("manifest"));

    m.def(
        "stratified_split",
        [](const Manifest& manifest, std::uint64_t seed, const std::string& fractions, bool group_by_lesion) {
            SplitSpec spec{SplitFractions::parse(fractions), seed, group_by_lesion};
            return stratified_split(manifest, spec).manifest;
        },
        py::arg("manifest"), py::arg("seed"), py::arg("fractions") = "0.7,0.15,0.15",
        py::arg("group_by_lesion") = false);
    m.def("verify_split", [](const Manifest& manifest) { return split_report_dict(verify_split(manifest)); },
          py::arg("manifest"));

    m.def(
        "resize_bilinear",
        [](py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast> image, std::size_t width,
           std::size_t height) {
            if (image.ndim() != 2 && image.ndim() != 3) throw ValidationError("image must be HxW or HxWxC");
            const auto h = static_cast<std::size_t>(image.shape(0));
            const auto w = static_cast<std::size_t>(image.shape(1));
            const std::size_t ch = image.ndim() == 3 ? static_cast<std::size_t>(image.shape(2)) : 1;
            Raster src(w, h, ch, std::vector<std::uint8_t>(image.data(), image.data() + w * h * ch));
            Raster out = resize_bilinear(src, {width, height});
            std::vector<py::ssize_t> shape = {static_cast<py::ssize_t>(height), static_cast<py::ssize_t>(width)};
            if (image.ndim() == 3) shape.push_back(static_cast<py::ssize_t>(ch));
            py::array_t<std::uint8_t> result(shape);
            std::copy(out.data().begin(), out.data().end(), result.mutable_data());
            return result;
        },
        py::arg("image"), py::arg("width"), py::arg("height"));

    py::class_<ScoreMatrix>(m, "ScoreMatrix")
        .def(py::init(&make_scores), py::arg("image_ids"), py::arg("truths"), py::arg("scores"))
        .def("__len__", &ScoreMatrix::size)
        .def_readonly("image_ids", &ScoreMatrix::image_ids)
        .def_property_readonly("truths",
                               [](const ScoreMatrix& s) {
                                   std::vector<std::size_t> t;
                                   for (ClassId c : s.truths) t.push_back(index_of(c));
                                   return t;
                               })
        .def_property_readonly("scores", [](const ScoreMatrix& s) {
            py::array_t<double> out({static_cast<py::ssize_t>(s.size()), py::ssize_t{kNumClasses}});
            auto a = out.mutable_unchecked<2>();
            for (std::size_t i = 0; i < s.size(); ++i) {
                for (std::size_t c = 0; c < kNumClasses; ++c) a(static_cast<py::ssize_t>(i), static_cast<py::ssize_t>(c)) = s.scores[i][c];
            }
            return out;
        });
    m.def("read_scores", &read_scores, py::arg("path"));
    m.def("parse_scores", &parse_scores, py::arg("text"));
    m.def("format_scores", &format_scores, py::arg("scores"));

    py::class_<PrfTriple>(m, "PrfTriple")
        .def_readonly("precision", &PrfTriple::precision)
        .def_readonly("recall", &PrfTriple::recall)
        .def_readonly("f1", &PrfTriple::f1)
        .def_readonly("tp", &PrfTriple::tp)
        .def_readonly("fp", &PrfTriple::fp)
        .def_readonly("fn", &PrfTriple::fn)
        .def_readonly("degenerate", &PrfTriple::degenerate);

    m.def("confusion_matrix", [](const ScoreMatrix& s) { return confusion_to_array(confusion_matrix(s)); },
          py::arg("scores"));
    m.def(
        "per_class_prf",
        [](py::array_t<std::uint64_t> cm, const py::handle& c) { return per_class_prf(array_to_confusion(cm), to_class(c)); },
        py::arg("confusion"), py::arg("class_id"));
    m.def("micro_average", [](py::array_t<std::uint64_t> cm) { return micro_average(array_to_confusion(cm)); },
          py::arg("confusion"));
    m.def(
        "macro_average",
        [](py::array_t<std::uint64_t> cm, bool include_degenerate) {
            const ConfusionMatrix c = array_to_confusion(cm);
            std::vector<PrfTriple> triples;
            for (ClassId k : kAllClasses) triples.push_back(per_class_prf(c, k));
            const MacroAverage a = macro_average(triples, include_degenerate);
            py::dict d;
            d["precision"] = a.precision;
            d["recall"] = a.recall;
            d["f1"] = a.f1;
            d["included"] = a.included;
            return d;
        },
        py::arg("confusion"), py::arg("include_degenerate") = false);

    m.def("roc_curve", [](const ScoreMatrix& s, const py::handle& c) { return curve_to_array(roc_curve(s, to_class(c))); },
          py::arg("scores"), py::arg("class_id"));
    m.def("micro_roc", [](const ScoreMatrix& s) { return curve_to_array(micro_roc(s)); }, py::arg("scores"));
    m.def("auc_trapezoid", [](py::array_t<double> curve) { return auc_trapezoid(array_to_curve(curve)); },
          py::arg("curve"));
    m.def(
        "macro_roc_auc",
        [](const ScoreMatrix& s) {
            const MacroRoc r = macro_roc_auc(s);
            py::dict d;
            d["auc"] = r.auc_interpolated;
            d["auc_mean"] = r.auc_mean;
            d["curve"] = curve_to_array(r.curve);
            std::vector<std::string> excluded;
            for (ClassId c : r.excluded) excluded.emplace_back(class_code(c));
            d["excluded"] = excluded;
            return d;
        },
        py::arg("scores"));
    m.def(
        "point_auc",
        [](double sensitivity, double specificity) { return point_auc({"", ClassId::MEL, sensitivity, specificity}); },
        py::arg("sensitivity"), py::arg("specificity"));
    m.def(
        "dominance_check",
        [](py::array_t<double> curve, double sensitivity, double specificity) {
            const DominanceResult r = dominance_check(array_to_curve(curve), {"", ClassId::MEL, sensitivity, specificity});
            return py::make_tuple(std::string(dominance_name(r.verdict)), r.tpr_at_operator_fpr);
        },
        py::arg("curve"), py::arg("sensitivity"), py::arg("specificity"));

    m.def(
        "evaluate",
        [](const std::filesystem::path& score_file, const std::filesystem::path& out_dir, const std::string& name,
           const std::string& format) {
            EvalOptions o{name, out_dir, parse_table_format(format)};
            return render_metrics_json(eval_command(score_file, o));
        },
        py::arg("score_file"), py::arg("out_dir"), py::arg("name") = "", py::arg("format") = "csv",
        "Runs the eval command and returns metrics.json content as a string.");
    m.def(
        "compare",
        [](const std::vector<std::filesystem::path>& score_files, const std::filesystem::path& operator_file,
           const std::vector<std::string>& classes, const std::filesystem::path& out_dir,
           const std::vector<std::string>& names, const std::string& format) {
            std::vector<ClassId> targets;
            for (const auto& c : classes) targets.push_back(parse_class(c));
            CompareOptions o{names, out_dir, parse_table_format(format)};
            return render_table3(compare_command(score_files, operator_file, targets, o), o.format);
        },
        py::arg("score_files"), py::arg("operator_file"), py::arg("classes") = std::vector<std::string>{"MEL", "BCC"},
        py::arg("out_dir") = ".", py::arg("names") = std::vector<std::string>{}, py::arg("format") = "csv",
        "Runs the compare command and returns the rendered comparison table.");
}
