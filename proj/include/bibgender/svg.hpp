#pragma once

#include <span>
#include <string>

#include "bibgender/cohort.hpp"
#include "bibgender/trends.hpp"

namespace bibgender {

// Decorative static charts; the CSV/JSON files are the real contract.

// Year vs women's percentage, bubble area = cohort size, one color per group.
std::string bubble_chart_svg(std::span<const CohortObservation> observations);

// Median women's share vs scaled curvature, red crosshair at the composite.
std::string quadrant_chart_svg(const TrendReport& report);

}  // namespace bibgender
