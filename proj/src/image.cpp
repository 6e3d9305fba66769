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

#include "dermbench/image.hpp"

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>
#include <opencv2/imgproc.hpp>

#include <algorithm>

#include "dermbench/error.hpp"

namespace dermbench {

Raster::Raster(std::size_t width, std::size_t height, std::size_t channels, std::uint8_t fill)
    : width_(width), height_(height), channels_(channels), data_(width * height * channels, fill) {}

Raster::Raster(std::size_t width, std::size_t height, std::size_t channels, std::vector<std::uint8_t> data)
    : width_(width), height_(height), channels_(channels), data_(std::move(data)) {
    if (data_.size() != width * height * channels) {
        throw ValidationError("raster buffer size does not match its dimensions");
    }
}

namespace {

/// Source tap for one output coordinate: lower index, upper index, and the
/// upper weight as a numerator over 2·dst.
struct Tap {
    std::size_t lo;
    std::size_t hi;
    std::int64_t weight_hi;
};

std::vector<Tap> make_taps(std::size_t src, std::size_t dst) {
    const auto s = static_cast<std::int64_t>(src);
    const auto d = static_cast<std::int64_t>(dst);
    const std::int64_t den = 2 * d;
    std::vector<Tap> taps(dst);
    for (std::int64_t i = 0; i < d; ++i) {
        // (i + 0.5)·s/d − 0.5 == ((2i + 1)·s − d) / 2d
        std::int64_t num = (2 * i + 1) * s - d;
        num = std::clamp<std::int64_t>(num, 0, (s - 1) * den);
        const std::int64_t lo = num / den;
        const std::int64_t frac = num % den;
        taps[static_cast<std::size_t>(i)] = {static_cast<std::size_t>(lo),
                                             static_cast<std::size_t>(std::min(lo + 1, s - 1)), frac};
    }
    return taps;
}

}  // namespace

Raster resize_bilinear(const Raster& src, ImageSize target) {
    if (src.empty()) throw ValidationError("cannot resize an image with a zero dimension");
    if (target.width == 0 || target.height == 0) throw ValidationError("target size must be non-zero");

    const auto xs = make_taps(src.width(), target.width);
    const auto ys = make_taps(src.height(), target.height);
    const std::int64_t den_x = 2 * static_cast<std::int64_t>(target.width);
    const std::int64_t den_y = 2 * static_cast<std::int64_t>(target.height);
    const std::int64_t den = den_x * den_y;
    const std::size_t ch = src.channels();

    Raster out(target.width, target.height, ch);
    for (std::size_t y = 0; y < target.height; ++y) {
        const Tap& ty = ys[y];
        for (std::size_t x = 0; x < target.width; ++x) {
            const Tap& tx = xs[x];
            for (std::size_t c = 0; c < ch; ++c) {
                const std::int64_t top = (den_x - tx.weight_hi) * src.at(tx.lo, ty.lo, c) +
                                         tx.weight_hi * src.at(tx.hi, ty.lo, c);
                const std::int64_t bottom = (den_x - tx.weight_hi) * src.at(tx.lo, ty.hi, c) +
                                            tx.weight_hi * src.at(tx.hi, ty.hi, c);
                const std::int64_t num = (den_y - ty.weight_hi) * top + ty.weight_hi * bottom;
                // Non-negative, so half-away-from-zero is floor(num/den + 1/2).
                const std::int64_t v = (2 * num + den) / (2 * den);
                out.at(x, y, c) = static_cast<std::uint8_t>(std::min<std::int64_t>(v, 255));
            }
        }
    }
    return out;
}

Raster decode_image_file(const std::filesystem::path& path) {
    cv::Mat bgr;
    try {
        bgr = cv::imread(path.string(), cv::IMREAD_COLOR);
    } catch (const cv::Exception& e) {
        throw ValidationError("cannot decode '" + path.string() + "': " + e.what());
    }
    if (bgr.empty()) throw ValidationError("cannot decode image '" + path.string() + "'");
    cv::Mat rgb;
    cv::cvtColor(bgr, rgb, cv::COLOR_BGR2RGB);
    if (!rgb.isContinuous()) rgb = rgb.clone();
    const auto w = static_cast<std::size_t>(rgb.cols);
    const auto h = static_cast<std::size_t>(rgb.rows);
    return Raster(w, h, 3, std::vector<std::uint8_t>(rgb.data, rgb.data + w * h * 3));
}

std::string encode_png(const Raster& image) {
    if (image.channels() != 1 && image.channels() != 3) {
        throw ValidationError("PNG encoding supports 1 or 3 channels");
    }
    const int type = image.channels() == 1 ? CV_8UC1 : CV_8UC3;
    cv::Mat view(static_cast<int>(image.height()), static_cast<int>(image.width()), type,
                 const_cast<std::uint8_t*>(image.data().data()));
    cv::Mat bgr;
    if (image.channels() == 3) {
        cv::cvtColor(view, bgr, cv::COLOR_RGB2BGR);
    } else {
        bgr = view;
    }
    std::vector<uchar> buf;
    if (!cv::imencode(".png", bgr, buf)) throw IoError("PNG encoding failed");
    return std::string(buf.begin(), buf.end());
}

}  // namespace dermbench
