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
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dermbench/manifest.hpp"
#include "dermbench/taxonomy.hpp"

namespace dermbench {

/// Train/validation/test proportions held as exact rationals over a shared
/// power-of-ten denominator, so 0.70/0.15/0.15 is 70/15/15 over 100.
class SplitFractions {
public:
    /// Default 0.70 / 0.15 / 0.15.
    SplitFractions();

    /// Parses "0.7,0.15,0.15". Each part is a non-negative decimal with at most
    /// 9 fractional digits; the parts must sum to exactly 1.
    static SplitFractions parse(std::string_view text);

    /// Builds from integer parts; throws ValidationError unless they sum to `denominator`.
    static SplitFractions from_parts(std::array<std::uint64_t, kNumSplits> numerators, std::uint64_t denominator);

    const std::array<std::uint64_t, kNumSplits>& numerators() const { return numerators_; }
    std::uint64_t denominator() const { return denominator_; }
    double as_double(Split s) const {
        return static_cast<double>(numerators_[index_of(s)]) / static_cast<double>(denominator_);
    }

private:
    std::array<std::uint64_t, kNumSplits> numerators_{};
    std::uint64_t denominator_ = 1;
};

struct SplitSpec {
    SplitFractions fractions;
    std::uint64_t seed = 0;
    bool group_by_lesion = false;
};

/// Largest-remainder apportionment of `n` items. Floors of n·f are assigned
/// first; leftover seats go to the largest remainders, ties resolved
/// TRAIN > VAL > TEST.
std::array<std::size_t, kNumSplits> apportion(std::size_t n, const SplitFractions& fractions);

/// Seed for one class's shuffle: the first SplitMix64 output from
/// seed + (class_index + 1) · 0x9E3779B97F4A7C15 (mod 2^64).
std::uint64_t class_stream_seed(std::uint64_t seed, ClassId c);

/// Fisher–Yates shuffle driven by SplitMix64: for i = n-1 down to 1,
/// swap(i, below(i + 1)).
template <typename T>
void seeded_shuffle(std::vector<T>& items, std::uint64_t seed);

struct SplitResult {
    Manifest manifest;
    std::vector<std::string> warnings;
};

/// Stratified split. Per class, records (or lesion groups) are sorted by
/// image_id, shuffled with the class stream, and the first k_train go to
/// TRAIN, the next k_val to VAL, the rest to TEST, where the k's come from
/// apportion(). Output rows keep the input order.
///
/// With group_by_lesion, a lesion group belongs to the class of its smallest
/// image_id and is shuffled by that id; every record needs a lesion_id.
SplitResult stratified_split(const Manifest& manifest, const SplitSpec& spec);

struct SplitReport {
    /// counts[split][class]
    std::array<std::array<std::size_t, kNumClasses>, kNumSplits> counts{};
    std::array<std::size_t, kNumSplits> totals{};
    std::array<double, kNumSplits> fractions{};
    bool has_lesion_ids = false;
    /// True iff some lesion_id appears in more than one split.
    bool leakage = false;
    std::vector<std::string> leaked_lesions;
};

/// Throws ValidationError if any record lacks a split.
SplitReport verify_split(const Manifest& manifest);

std::string format_split_report(const SplitReport& report);

}  // namespace dermbench

#include "dermbench/rng.hpp"

template <typename T>
void dermbench::seeded_shuffle(std::vector<T>& items, std::uint64_t seed) {
    SplitMix64 rng(seed);
    for (std::size_t i = items.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng.below(i));
        std::swap(items[i - 1], items[j]);
    }
}
