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

// Command-line front end: manifest build | split | preprocess | eval | compare.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dermbench/dataset.hpp"
#include "dermbench/error.hpp"
#include "dermbench/preprocess.hpp"
#include "dermbench/report.hpp"
#include "dermbench/splitter.hpp"

namespace fs = std::filesystem;
using namespace dermbench;

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;

bool g_verbose = false;

void print_warnings(const std::vector<std::string>& warnings) {
    for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
}

void print_written(const CommandOutput& out) {
    if (!g_verbose) return;
    for (const auto& f : out.files) std::cerr << "wrote " << f.string() << '\n';
}

void print_summary(const DatasetSummary& s) {
    for (ClassId c : kAllClasses) std::cout << class_code(c) << ',' << s.count(c) << '\n';
    std::cout << "total," << s.total << '\n';
}

std::vector<ClassId> parse_class_list(const std::string& text) {
    std::vector<ClassId> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        out.push_back(parse_class(text.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    return out;
}

std::uint64_t parse_seed(const std::string& text, const char* what) {
    try {
        std::size_t used = 0;
        if (text.empty() || text.front() == '-') throw std::invalid_argument(text);
        const unsigned long long v = std::stoull(text, &used, 10);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw ValidationError(std::string(what) + " is not an unsigned 64-bit integer: '" + text + "'");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dermbench: dermoscopy classification benchmarking harness"};
    app.require_subcommand(1);
    app.add_flag("-v,--verbose", g_verbose, "Print written files and extra detail");

    // manifest build
    auto* manifest_cmd = app.add_subcommand("manifest", "Build or summarize a dataset manifest");
    manifest_cmd->require_subcommand(1);
    auto* build = manifest_cmd->add_subcommand("build", "Ingest HAM10000 and PH2 into one manifest");
    std::string ham_meta, ham_images, ph2_index, ph2_images, manifest_out;
    bool ph2_all = false, skip_missing = false;
    build->add_option("--ham10000-meta", ham_meta, "HAM10000 metadata CSV");
    build->add_option("--ham10000-images", ham_images, "HAM10000 image directory");
    build->add_option("--ph2-index", ph2_index, "PH2 index (PH2_dataset.txt or CSV)");
    build->add_option("--ph2-images", ph2_images, "PH2 image directory");
    build->add_flag("--ph2-all-classes", ph2_all, "Keep PH2 common nevi (mapped to NV)");
    build->add_flag("--skip-missing", skip_missing, "Warn and drop records whose image file is missing");
    build->add_option("-o,--output", manifest_out, "Output manifest CSV")->required();

    auto* summary_cmd = manifest_cmd->add_subcommand("summary", "Print per-class counts of a manifest");
    std::string summary_manifest;
    summary_cmd->add_option("--manifest", summary_manifest)->required();

    // split
    auto* split_cmd = app.add_subcommand("split", "Stratified train/val/test split");
    std::string split_manifest, split_out, fractions = "0.7,0.15,0.15", seed_text;
    bool group_by_lesion = false;
    split_cmd->add_option("--manifest", split_manifest)->required();
    split_cmd->add_option("--seed", seed_text, "u64 seed (default: $DERMBENCH_SEED)");
    split_cmd->add_option("--fractions", fractions, "train,val,test fractions")->capture_default_str();
    split_cmd->add_flag("--group-by-lesion", group_by_lesion, "Keep each lesion_id within one split");
    split_cmd->add_option("-o,--output", split_out)->required();

    // preprocess
    auto* pre_cmd = app.add_subcommand("preprocess", "Resize images to a model input size");
    std::string pre_manifest, pre_out, size_text = "224x224";
    bool skip_undecodable = false;
    unsigned threads = 0;
    pre_cmd->add_option("--manifest", pre_manifest)->required();
    pre_cmd->add_option("--size", size_text, "WxH, e.g. 224x224 or 299x299")->capture_default_str();
    pre_cmd->add_flag("--skip-undecodable", skip_undecodable, "Drop images that fail to decode");
    pre_cmd->add_option("--threads", threads, "Worker threads (0 = all cores)");
    pre_cmd->add_option("-o,--output", pre_out, "Output directory")->required();

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "Metrics, tables and ROC plots for one score file");
    std::string eval_scores, eval_name, eval_out = ".", eval_format = "csv";
    eval_cmd->add_option("--scores", eval_scores)->required();
    eval_cmd->add_option("--name", eval_name, "Model name (default: file stem)");
    eval_cmd->add_option("--out-dir", eval_out)->capture_default_str();
    eval_cmd->add_option("--format", eval_format)->check(CLI::IsMember({"csv", "md"}))->capture_default_str();

    // compare
    auto* cmp_cmd = app.add_subcommand("compare", "Compare models with human operating points");
    std::vector<std::string> cmp_scores, cmp_names;
    std::string cmp_ops, cmp_classes = "MEL,BCC", cmp_out = ".", cmp_format = "csv";
    cmp_cmd->add_option("--scores", cmp_scores)->required();
    cmp_cmd->add_option("--names", cmp_names, "Model names, one per score file");
    cmp_cmd->add_option("--operators", cmp_ops, "name,target_class,sensitivity,specificity CSV")->required();
    cmp_cmd->add_option("--classes", cmp_classes, "Target classes")->capture_default_str();
    cmp_cmd->add_option("--out-dir", cmp_out)->capture_default_str();
    cmp_cmd->add_option("--format", cmp_format)->check(CLI::IsMember({"csv", "md"}))->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    try {
        if (build->parsed()) {
            if (ham_meta.empty() && ph2_index.empty()) {
                throw ValidationError("give --ham10000-meta and/or --ph2-index");
            }
            IngestOptions opts;
            if (skip_missing) opts.missing_images = MissingImagePolicy::Skip;
            Manifest merged;
            if (!ham_meta.empty()) {
                if (ham_images.empty()) throw ValidationError("--ham10000-images is required with --ham10000-meta");
                auto ham = ingest_ham10000(ham_meta, ham_images, opts);
                print_warnings(ham.warnings);
                if (ham.dropped) std::cerr << "HAM10000: dropped " << ham.dropped << " records\n";
                merged = std::move(ham.records);
            }
            if (!ph2_index.empty()) {
                if (ph2_images.empty()) throw ValidationError("--ph2-images is required with --ph2-index");
                auto ph2 = ingest_ph2(ph2_index, ph2_images, ph2_all ? ClassSet::all() : kDefaultPh2Selection, opts);
                print_warnings(ph2.warnings);
                if (ph2.dropped) std::cerr << "PH2: dropped " << ph2.dropped << " records\n";
                if (g_verbose) std::cerr << "PH2: " << ph2.excluded << " lesions outside the selection\n";
                merged = merge_manifests(merged, ph2.records);
            }
            write_manifest(manifest_out, merged);
            print_summary(summarize(merged));
        } else if (summary_cmd->parsed()) {
            print_summary(summarize(read_manifest(summary_manifest)));
        } else if (split_cmd->parsed()) {
            SplitSpec spec;
            if (!seed_text.empty()) {
                spec.seed = parse_seed(seed_text, "--seed");
            } else if (const char* env = std::getenv("DERMBENCH_SEED"); env && *env) {
                spec.seed = parse_seed(env, "DERMBENCH_SEED");
            } else {
                throw ValidationError("no seed: pass --seed or set DERMBENCH_SEED");
            }
            spec.fractions = SplitFractions::parse(fractions);
            spec.group_by_lesion = group_by_lesion;
            auto result = stratified_split(read_manifest(split_manifest), spec);
            print_warnings(result.warnings);
            write_manifest(split_out, result.manifest);
            std::cout << format_split_report(verify_split(result.manifest));
        } else if (pre_cmd->parsed()) {
            PreprocessSpec spec;
            spec.target_size = parse_image_size(size_text);
            PreprocessOptions opts;
            opts.skip_undecodable = skip_undecodable;
            opts.threads = threads;
            Manifest input = read_manifest(pre_manifest);
            const fs::path base = fs::path(pre_manifest).parent_path();
            for (auto& rec : input) {
                if (fs::path(rec.path).is_relative()) rec.path = (base / rec.path).string();
            }
            auto result = preprocess_batch(input, spec, pre_out, opts);
            print_warnings(result.warnings);
            write_manifest(fs::path(pre_out) / "manifest.csv", result.manifest);
            std::cout << "preprocessed " << result.manifest.size() << " images";
            if (result.skipped) std::cout << " (" << result.skipped << " skipped)";
            std::cout << " -> " << (fs::path(pre_out) / "manifest.csv").string() << '\n';
        } else if (eval_cmd->parsed()) {
            EvalOptions opts;
            opts.model_name = eval_name;
            opts.out_dir = eval_out;
            opts.format = parse_table_format(eval_format);
            CommandOutput out;
            EvalReport report = eval_command(eval_scores, opts, &out);
            print_warnings(out.warnings);
            print_written(out);
            std::cout << render_table1(std::span(&report, 1), opts.format);
        } else if (cmp_cmd->parsed()) {
            CompareOptions opts;
            opts.model_names = cmp_names;
            opts.out_dir = cmp_out;
            opts.format = parse_table_format(cmp_format);
            std::vector<fs::path> files(cmp_scores.begin(), cmp_scores.end());
            const auto classes = parse_class_list(cmp_classes);
            CommandOutput out;
            CompareReport report = compare_command(files, cmp_ops, classes, opts, &out);
            print_written(out);
            std::cout << render_table3(report, opts.format);
        }
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return kExitIo;
    }
    return 0;
}
