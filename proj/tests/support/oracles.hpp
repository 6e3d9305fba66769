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

// Reference computations used only by tests. They deliberately avoid the
// library's code paths: AUC by pair counting, resizing in exact rationals.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "dermbench/image.hpp"
#include "dermbench/scores.hpp"

namespace dermbench::testing {

/// Mann–Whitney AUC: fraction of (positive, negative) pairs where the
/// positive scores higher, ties counted one half.
inline double pair_count_auc(std::span<const double> scores, std::span<const std::uint8_t> positive) {
    std::uint64_t twice = 0, pos = 0, neg = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (positive[i]) {
            ++pos;
        } else {
            ++neg;
        }
    }
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (!positive[i]) continue;
        for (std::size_t j = 0; j < scores.size(); ++j) {
            if (positive[j]) continue;
            if (scores[i] > scores[j]) {
                twice += 2;
            } else if (scores[i] == scores[j]) {
                twice += 1;
            }
        }
    }
    return static_cast<double>(twice) / (2.0 * static_cast<double>(pos) * static_cast<double>(neg));
}

/// Bilinear half-pixel resize evaluated literally in exact rational arithmetic:
/// s = (d + 1/2)·(src/dst) − 1/2, clamped to [0, src−1], then lerp and round
/// half away from zero.
inline Raster rational_resize(const Raster& src, ImageSize target) {
    using boost::multiprecision::cpp_rational;
    using boost::multiprecision::cpp_int;
    auto coord = [](std::size_t d, std::size_t src_n, std::size_t dst_n) {
        cpp_rational s = (cpp_rational(static_cast<long long>(d)) + cpp_rational(1, 2)) *
                             cpp_rational(static_cast<long long>(src_n), static_cast<long long>(dst_n)) -
                         cpp_rational(1, 2);
        if (s < 0) s = 0;
        const cpp_rational max_s(static_cast<long long>(src_n - 1));
        if (s > max_s) s = max_s;
        return s;
    };
    auto floor_of = [](const cpp_rational& r) {
        cpp_int q = boost::multiprecision::numerator(r) / boost::multiprecision::denominator(r);
        return static_cast<std::size_t>(q);
    };
    Raster out(target.width, target.height, src.channels());
    for (std::size_t y = 0; y < target.height; ++y) {
        const cpp_rational sy = coord(y, src.height(), target.height);
        const std::size_t y0 = floor_of(sy);
        const std::size_t y1 = std::min(y0 + 1, src.height() - 1);
        const cpp_rational fy = sy - cpp_rational(static_cast<long long>(y0));
        for (std::size_t x = 0; x < target.width; ++x) {
            const cpp_rational sx = coord(x, src.width(), target.width);
            const std::size_t x0 = floor_of(sx);
            const std::size_t x1 = std::min(x0 + 1, src.width() - 1);
            const cpp_rational fx = sx - cpp_rational(static_cast<long long>(x0));
            for (std::size_t c = 0; c < src.channels(); ++c) {
                const cpp_rational v = (1 - fy) * ((1 - fx) * src.at(x0, y0, c) + fx * src.at(x1, y0, c)) +
                                       fy * ((1 - fx) * src.at(x0, y1, c) + fx * src.at(x1, y1, c));
                // v >= 0: round half away from zero == floor(v + 1/2).
                out.at(x, y, c) = static_cast<std::uint8_t>(floor_of(v + cpp_rational(1, 2)));
            }
        }
    }
    return out;
}

/// Random score matrix whose rows are small integer weights normalized to
/// sum 1, so equal scores (ties) are common.
inline ScoreMatrix random_tied_scores(std::mt19937_64& rng, std::size_t n, int max_weight = 4) {
    std::uniform_int_distribution<int> weight(0, max_weight);
    std::uniform_int_distribution<std::size_t> label(0, kNumClasses - 1);
    ScoreMatrix m;
    for (std::size_t i = 0; i < n; ++i) {
        ScoreRow row{};
        int sum = 0;
        std::array<int, kNumClasses> w{};
        for (auto& v : w) sum += (v = weight(rng));
        for (std::size_t c = 0; c < kNumClasses; ++c) {
            row[c] = sum == 0 ? 1.0 / kNumClasses : static_cast<double>(w[c]) / sum;
        }
        m.image_ids.push_back("s" + std::to_string(i));
        m.truths.push_back(static_cast<ClassId>(label(rng)));
        m.scores.push_back(row);
    }
    return m;
}

inline std::vector<std::uint8_t> one_vs_rest(const ScoreMatrix& m, ClassId c) {
    std::vector<std::uint8_t> pos(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) pos[i] = m.truths[i] == c;
    return pos;
}

}  // namespace dermbench::testing
