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

#include "dermbench/preprocess.hpp"

#include <atomic>
#include <charconv>
#include <exception>
#include <optional>
#include <thread>

#include "dermbench/error.hpp"
#include "dermbench/fileio.hpp"

namespace dermbench {

bool PreprocessSpec::is_standard_size() const {
    return target_size == ImageSize{299, 299} || target_size == ImageSize{224, 224};
}

ImageSize parse_image_size(std::string_view text) {
    const auto x = text.find_first_of("xX");
    auto parse_dim = [&](std::string_view part) {
        std::size_t v = 0;
        auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
        if (ec != std::errc() || ptr != part.data() + part.size() || v == 0) {
            throw ValidationError("invalid image size '" + std::string(text) + "', expected WxH");
        }
        return v;
    };
    if (x == std::string_view::npos) throw ValidationError("invalid image size '" + std::string(text) + "', expected WxH");
    return {parse_dim(text.substr(0, x)), parse_dim(text.substr(x + 1))};
}

Raster resize_image(const Raster& image, const PreprocessSpec& spec) {
    switch (spec.interpolation) {
        case Interpolation::Bilinear: return resize_bilinear(image, spec.target_size);
    }
    throw ValidationError("unsupported interpolation");
}

PreprocessResult preprocess_batch(const Manifest& manifest, const PreprocessSpec& spec,
                                  const std::filesystem::path& out_dir, const PreprocessOptions& options) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory '" + out_dir.string() + "': " + ec.message());

    struct Outcome {
        std::optional<ManifestRecord> record;
        std::exception_ptr error;
        bool undecodable = false;
        std::string message;
    };
    std::vector<Outcome> outcomes(manifest.size());

    auto work = [&](std::size_t i) {
        const auto& in = manifest[i];
        Outcome& o = outcomes[i];
        try {
            Raster src;
            try {
                if (!fs::exists(in.path)) throw IoError("image file '" + in.path + "' not found");
                src = decode_image_file(in.path);
            } catch (const ValidationError& e) {
                o.undecodable = true;
                o.message = "record '" + in.image_id + "': " + e.what();
                if (!options.skip_undecodable) throw ValidationError(o.message);
                return;
            }
            const std::string png = encode_png(resize_image(src, spec));
            const fs::path out_path = out_dir / (in.image_id + ".png");
            write_file_atomic(out_path, png);
            ManifestRecord r = in;
            r.path = out_path.string();
            r.checksum = sha256_hex(png);
            o.record = std::move(r);
        } catch (...) {
            o.error = std::current_exception();
        }
    };

    unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(manifest.size(), 1)));
    std::atomic<std::size_t> next{0};
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < manifest.size(); i = next++) work(i);
            });
        }
    }

    PreprocessResult result;
    if (!spec.is_standard_size()) {
        result.warnings.push_back("target size " + std::to_string(spec.target_size.width) + "x" +
                                  std::to_string(spec.target_size.height) +
                                  " is not one of the standard 224x224 / 299x299 inputs");
    }
    // Errors are reported in manifest order regardless of which thread hit them.
    for (auto& o : outcomes) {
        if (o.error) std::rethrow_exception(o.error);
        if (o.record) {
            result.manifest.push_back(std::move(*o.record));
        } else if (o.undecodable) {
            ++result.skipped;
            result.warnings.push_back(o.message + " (skipped)");
        }
    }
    return result;
}

}  // namespace dermbench
