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
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace dermbench {

inline constexpr std::size_t kNumClasses = 8;

/// Canonical class order. Every file format and report uses these indices.
enum class ClassId : std::uint8_t {
    MEL = 0,
    NV = 1,
    BCC = 2,
    AKIEC = 3,
    BKL = 4,
    DF = 5,
    VASC = 6,
    ATYP_NV = 7,
};

inline constexpr std::array<ClassId, kNumClasses> kAllClasses = {
    ClassId::MEL, ClassId::NV,  ClassId::BCC,  ClassId::AKIEC,
    ClassId::BKL, ClassId::DF,  ClassId::VASC, ClassId::ATYP_NV,
};

constexpr std::size_t index_of(ClassId c) { return static_cast<std::size_t>(c); }

/// Symbolic code used in manifests and score-file headers, e.g. "ATYP_NV".
std::string_view class_code(ClassId c);

/// Column heading used in rendered tables, e.g. "Atyp NV".
std::string_view class_display_name(ClassId c);

std::optional<ClassId> class_from_code(std::string_view code);

/// Accepts "MEL" or "0".."7"; throws ValidationError otherwise.
ClassId parse_class(std::string_view text);

ClassId class_from_index(std::size_t i);

/// HAM10000 `dx` code table: nv, mel, bcc, akiec, bkl, df, vasc.
std::optional<ClassId> class_from_ham_dx(std::string_view dx);

/// Bitmask over the eight classes.
class ClassSet {
public:
    constexpr ClassSet() = default;

    static constexpr ClassSet all() { return ClassSet(0xFF); }
    static constexpr ClassSet of(std::initializer_list<ClassId> classes) {
        ClassSet s;
        for (ClassId c : classes) s.insert(c);
        return s;
    }

    constexpr void insert(ClassId c) { bits_ |= static_cast<std::uint8_t>(1u << index_of(c)); }
    constexpr bool contains(ClassId c) const { return (bits_ >> index_of(c)) & 1u; }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr bool operator==(const ClassSet&) const = default;

private:
    constexpr explicit ClassSet(std::uint8_t bits) : bits_(bits) {}
    std::uint8_t bits_ = 0;
};

}  // namespace dermbench
