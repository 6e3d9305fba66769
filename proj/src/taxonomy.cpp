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

#include "dermbench/taxonomy.hpp"

#include <charconv>

#include "dermbench/error.hpp"

namespace dermbench {
namespace {

constexpr std::array<std::string_view, kNumClasses> kCodes = {
    "MEL", "NV", "BCC", "AKIEC", "BKL", "DF", "VASC", "ATYP_NV",
};

constexpr std::array<std::string_view, kNumClasses> kDisplayNames = {
    "Mel", "NV", "BCC", "AKIEC", "BK", "DF", "VASC", "Atyp NV",
};

constexpr std::array<std::pair<std::string_view, ClassId>, 7> kHamCodes = {{
    {"nv", ClassId::NV},
    {"mel", ClassId::MEL},
    {"bcc", ClassId::BCC},
    {"akiec", ClassId::AKIEC},
    {"bkl", ClassId::BKL},
    {"df", ClassId::DF},
    {"vasc", ClassId::VASC},
}};

}  // namespace

std::string_view class_code(ClassId c) { return kCodes.at(index_of(c)); }

std::string_view class_display_name(ClassId c) { return kDisplayNames.at(index_of(c)); }

std::optional<ClassId> class_from_code(std::string_view code) {
    for (std::size_t i = 0; i < kNumClasses; ++i) {
        if (kCodes[i] == code) return static_cast<ClassId>(i);
    }
    return std::nullopt;
}

ClassId class_from_index(std::size_t i) {
    if (i >= kNumClasses) throw ValidationError("class index out of range: " + std::to_string(i));
    return static_cast<ClassId>(i);
}

ClassId parse_class(std::string_view text) {
    if (auto c = class_from_code(text)) return *c;
    std::size_t idx = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), idx);
    if (ec == std::errc() && ptr == text.data() + text.size() && !text.empty() && idx < kNumClasses) {
        return static_cast<ClassId>(idx);
    }
    throw ValidationError("unknown class label '" + std::string(text) + "'");
}

std::optional<ClassId> class_from_ham_dx(std::string_view dx) {
    for (const auto& [code, cls] : kHamCodes) {
        if (code == dx) return cls;
    }
    return std::nullopt;
}

}  // namespace dermbench
