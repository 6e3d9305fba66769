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

#include "dermbench/splitter.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <numeric>
#include <set>
#include <cstdio>
#include <sstream>

#include "dermbench/error.hpp"

namespace dermbench {
namespace {

constexpr std::uint64_t kMaxFractionDigits = 9;

std::uint64_t pow10(std::uint64_t k) {
    std::uint64_t v = 1;
    while (k--) v *= 10;
    return v;
}

/// Parses a non-negative decimal into (numerator, fractional digit count).
std::pair<std::uint64_t, std::uint64_t> parse_decimal(std::string_view s) {
    std::string_view whole = s, frac;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
        whole = s.substr(0, dot);
        frac = s.substr(dot + 1);
    }
    auto digits_only = [](std::string_view p) {
        return std::all_of(p.begin(), p.end(), [](char ch) { return ch >= '0' && ch <= '9'; });
    };
    if ((whole.empty() && frac.empty()) || !digits_only(whole) || !digits_only(frac) ||
        frac.size() > kMaxFractionDigits || whole.size() > 3) {
        throw ValidationError("invalid split fraction '" + std::string(s) + "'");
    }
    std::uint64_t w = 0, f = 0;
    if (!whole.empty()) std::from_chars(whole.data(), whole.data() + whole.size(), w);
    if (!frac.empty()) std::from_chars(frac.data(), frac.data() + frac.size(), f);
    return {w * pow10(frac.size()) + f, frac.size()};
}

}  // namespace

SplitFractions::SplitFractions() : numerators_{70, 15, 15}, denominator_(100) {}

SplitFractions SplitFractions::from_parts(std::array<std::uint64_t, kNumSplits> numerators,
                                          std::uint64_t denominator) {
    if (denominator == 0) throw ValidationError("split fraction denominator must be positive");
    const std::uint64_t sum = std::accumulate(numerators.begin(), numerators.end(), std::uint64_t{0});
    if (sum != denominator) throw ValidationError("split fractions must sum to exactly 1");
    SplitFractions f;
    f.numerators_ = numerators;
    f.denominator_ = denominator;
    return f;
}

SplitFractions SplitFractions::parse(std::string_view text) {
    std::vector<std::string_view> parts;
    std::size_t pos = 0;
    while (true) {
        std::size_t comma = text.find(',', pos);
        parts.push_back(text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    if (parts.size() != kNumSplits) {
        throw ValidationError("expected three comma-separated split fractions, got '" + std::string(text) + "'");
    }
    std::array<std::pair<std::uint64_t, std::uint64_t>, kNumSplits> parsed;
    std::uint64_t digits = 0;
    for (std::size_t i = 0; i < kNumSplits; ++i) {
        parsed[i] = parse_decimal(parts[i]);
        digits = std::max(digits, parsed[i].second);
    }
    std::array<std::uint64_t, kNumSplits> nums{};
    for (std::size_t i = 0; i < kNumSplits; ++i) nums[i] = parsed[i].first * pow10(digits - parsed[i].second);
    return from_parts(nums, pow10(digits));
}

std::array<std::size_t, kNumSplits> apportion(std::size_t n, const SplitFractions& fractions) {
    const std::uint64_t den = fractions.denominator();
    std::array<std::size_t, kNumSplits> seats{};
    std::array<std::uint64_t, kNumSplits> remainders{};
    std::size_t assigned = 0;
    for (std::size_t s = 0; s < kNumSplits; ++s) {
        const std::uint64_t quota = static_cast<std::uint64_t>(n) * fractions.numerators()[s];
        seats[s] = static_cast<std::size_t>(quota / den);
        remainders[s] = quota % den;
        assigned += seats[s];
    }
    std::array<std::size_t, kNumSplits> order{0, 1, 2};
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return remainders[a] > remainders[b]; });
    for (std::size_t k = 0; assigned < n; ++k, ++assigned) ++seats[order[k]];
    return seats;
}

std::uint64_t class_stream_seed(std::uint64_t seed, ClassId c) {
    SplitMix64 rng(seed + (static_cast<std::uint64_t>(index_of(c)) + 1) * 0x9E3779B97F4A7C15ULL);
    return rng.next();
}

namespace {

/// A unit of assignment: one record, or one lesion group.
struct Unit {
    std::string key;  // smallest image_id in the unit
    std::vector<std::size_t> rows;
};

}  // namespace

SplitResult stratified_split(const Manifest& manifest, const SplitSpec& spec) {
    SplitResult result{manifest, {}};

    std::array<std::vector<Unit>, kNumClasses> per_class;
    {
        std::vector<std::size_t> order(manifest.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return manifest[a].image_id < manifest[b].image_id; });
        for (std::size_t k = 1; k < order.size(); ++k) {
            if (manifest[order[k]].image_id == manifest[order[k - 1]].image_id) {
                throw ValidationError("duplicate image_id '" + manifest[order[k]].image_id + "' in manifest");
            }
        }

        if (!spec.group_by_lesion) {
            for (std::size_t row : order) {
                per_class[index_of(manifest[row].label)].push_back(Unit{manifest[row].image_id, {row}});
            }
        } else {
            // Walking rows in image_id order makes the first row of each group its key.
            std::map<std::string, Unit> groups;
            std::map<std::string, ClassId> group_class;
            std::set<std::string> mixed;
            for (std::size_t row : order) {
                const auto& r = manifest[row];
                if (!r.lesion_id || r.lesion_id->empty()) {
                    throw ValidationError("group_by_lesion requires a lesion_id on every record; '" + r.image_id +
                                          "' has none");
                }
                auto [it, inserted] = groups.try_emplace(*r.lesion_id, Unit{r.image_id, {}});
                it->second.rows.push_back(row);
                if (inserted) {
                    group_class.emplace(*r.lesion_id, r.label);
                } else if (group_class.at(*r.lesion_id) != r.label) {
                    mixed.insert(*r.lesion_id);
                }
            }
            for (const auto& lesion : mixed) {
                result.warnings.push_back("lesion " + lesion + " has records with different labels; stratified by " +
                                          std::string(class_code(group_class.at(lesion))));
            }
            for (auto& [lesion, unit] : groups) per_class[index_of(group_class.at(lesion))].push_back(std::move(unit));
            for (auto& units : per_class) {
                std::sort(units.begin(), units.end(), [](const Unit& a, const Unit& b) { return a.key < b.key; });
            }
        }
    }

    const auto& nums = spec.fractions.numerators();
    const std::size_t nonzero_splits =
        static_cast<std::size_t>(std::count_if(nums.begin(), nums.end(), [](std::uint64_t v) { return v != 0; }));

    for (ClassId c : kAllClasses) {
        auto& units = per_class[index_of(c)];
        if (units.empty()) continue;
        if (units.size() < nonzero_splits) {
            result.warnings.push_back("class " + std::string(class_code(c)) + " has only " +
                                      std::to_string(units.size()) + (spec.group_by_lesion ? " lesion groups" : " records") +
                                      "; some splits receive none");
        }
        seeded_shuffle(units, class_stream_seed(spec.seed, c));
        const auto seats = apportion(units.size(), spec.fractions);
        std::size_t u = 0;
        for (std::size_t s = 0; s < kNumSplits; ++s) {
            for (std::size_t k = 0; k < seats[s]; ++k, ++u) {
                for (std::size_t row : units[u].rows) result.manifest[row].split = static_cast<Split>(s);
            }
        }
    }
    return result;
}

SplitReport verify_split(const Manifest& manifest) {
    SplitReport report;
    std::map<std::string, std::set<Split>> lesion_splits;
    for (const auto& r : manifest) {
        if (!r.split) throw ValidationError("record '" + r.image_id + "' has no split assigned");
        const std::size_t s = index_of(*r.split);
        ++report.counts[s][index_of(r.label)];
        ++report.totals[s];
        if (r.lesion_id && !r.lesion_id->empty()) {
            report.has_lesion_ids = true;
            lesion_splits[*r.lesion_id].insert(*r.split);
        }
    }
    for (std::size_t s = 0; s < kNumSplits; ++s) {
        report.fractions[s] =
            manifest.empty() ? 0.0 : static_cast<double>(report.totals[s]) / static_cast<double>(manifest.size());
    }
    for (const auto& [lesion, splits] : lesion_splits) {
        if (splits.size() > 1) report.leaked_lesions.push_back(lesion);
    }
    report.leakage = !report.leaked_lesions.empty();
    return report;
}

std::string format_split_report(const SplitReport& report) {
    std::ostringstream out;
    out << "split";
    for (ClassId c : kAllClasses) out << ',' << class_code(c);
    out << ",total,fraction\n";
    for (std::size_t s = 0; s < kNumSplits; ++s) {
        out << split_name(static_cast<Split>(s));
        for (std::size_t c = 0; c < kNumClasses; ++c) out << ',' << report.counts[s][c];
        char frac[32];
        std::snprintf(frac, sizeof frac, "%.4f", report.fractions[s]);
        out << ',' << report.totals[s] << ',' << frac << '\n';
    }
    if (report.has_lesion_ids) {
        out << "lesion_leakage," << (report.leakage ? "true" : "false") << ',' << report.leaked_lesions.size()
            << " lesions in more than one split\n";
    }
    return out.str();
}

}  // namespace dermbench
