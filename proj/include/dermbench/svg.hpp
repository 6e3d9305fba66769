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

#include <span>
#include <string>
#include <vector>

#include "dermbench/metrics.hpp"

namespace dermbench {

struct LabeledCurve {
    std::string label;
    RocCurve curve;
    /// Empty picks the next palette colour.
    std::string color;
};

struct SvgStyle {
    int width = 520;
    int height = 520;
    std::string title;
    bool chance_diagonal = true;
    /// Operator points with this name are drawn large and green.
    std::string highlight_name = "mean";
};

/// Standalone SVG 1.1 ROC plot over [0,1]². Curves become polylines and
/// operator points become circles. Output depends only on the arguments.
std::string emit_svg(std::span<const LabeledCurve> curves, std::span<const OperatorPoint> points,
                     const SvgStyle& style = {});

}  // namespace dermbench
