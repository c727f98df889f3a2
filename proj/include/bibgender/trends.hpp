#pragma once

#include <span>
#include <string>
#include <vector>

#include "bibgender/cohort.hpp"
#include "bibgender/execution.hpp"

namespace bibgender {

// One group's women's-share trajectory. x is the decade index (0,1,2,3 for
// 1970..2000-style data; in general the rank of the year among the analyzed
// years), y the women's percentage, weight the cohort size.
struct SeriesPoint {
    double x = 0.0;
    double y = 0.0;
    double weight = 0.0;
};

struct Series {
    std::string group_id;
    std::vector<SeriesPoint> points;  // x strictly increasing
};

enum class Shape { Convex, Linear, Concave };

struct QuadraticFit {
    double a = 0.0;  // x^2 coefficient, pct per decade^2
    double b = 0.0;
    double c = 0.0;
    double r2 = 0.0;
    double r2_linear = 0.0;  // degree-1 comparison fit
    bool degenerate = false; // constant series: r2 defined as 1
};

// Unweighted least squares y = a x^2 + b x + c, plus the degree-1
// comparison fit. Needs at least 3 points.
QuadraticFit fit_quadratic(const Series& series);

// Sign of the curvature under a tolerance: a > tol Convex (accelerating),
// a < -tol Concave (decelerating), else Linear.
Shape classify_shape(const QuadraticFit& fit, double tolerance = 0.0);

double median_share(const Series& series);

struct GroupSummary {
    std::string group_id;
    double median_pct = 0.0;
    Shape shape = Shape::Linear;
    double a = 0.0;
    double total_authors = 0.0;  // sum of the series weights
};

struct CompositeYear {
    int year = 0;
    double pct = 0.0;
    double total_authors = 0.0;
};

// The author-weighted "all groups" aggregate the individual groups are
// benchmarked against.
struct CompositeSummary {
    std::vector<CompositeYear> per_year;
    double median_weighted = 0.0;  // author-weighted average of group medians
    double median_series = 0.0;    // median of the per-year composite values
    QuadraticFit fit;
    Shape shape = Shape::Linear;
    int display_scale = 100;

    double a_scaled() const { return fit.a * display_scale; }
};

// Requires an observation for every (group, analyzed year) pair; throws
// CoverageError naming the gaps otherwise. Per-year composite is
// sum(n_female) / sum(n_total) over groups.
CompositeSummary composite(std::span<const CohortObservation> observations,
                           double shape_tolerance = 0.0);

// Quadrant label per group: above/below the composite weighted median
// crossed with curvature above/below the composite curvature. Exact ties
// land "on-axis".
std::vector<std::string> quadrant(std::span<const GroupSummary> summaries,
                                  const CompositeSummary& composite);

// Observation plumbing: one Series per group (alphabetical), x = rank of
// the year among all analyzed years, y = pct_women_all.
std::vector<Series> series_by_group(std::span<const CohortObservation> observations);

GroupSummary summarize_group(const Series& series, double shape_tolerance = 0.0);

struct TrendOptions {
    double shape_tolerance = 0.0;
    int display_scale = 100;
};

struct GroupTrend {
    GroupSummary summary;
    QuadraticFit fit;
    std::string quadrant;
};

struct TrendReport {
    std::vector<GroupTrend> groups;  // alphabetical by group_id
    CompositeSummary composite;
    int display_scale = 100;
};

TrendReport analyze_trends(std::span<const CohortObservation> observations,
                           TrendOptions options = {}, Execution exec = Execution::Parallel);

std::string_view to_string(Shape shape);

}  // namespace bibgender
