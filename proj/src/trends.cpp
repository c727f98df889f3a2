#include "bibgender/trends.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "bibgender/errors.hpp"

namespace bibgender {

namespace {

// Gaussian elimination with partial pivoting on the 3x3 normal equations.
void solve3(double a[3][3], double b[3], double x[3]) {
    int perm[3] = {0, 1, 2};
    for (int col = 0; col < 3; ++col) {
        int pivot = col;
        for (int row = col + 1; row < 3; ++row) {
            if (std::abs(a[perm[row]][col]) > std::abs(a[perm[pivot]][col])) pivot = row;
        }
        std::swap(perm[col], perm[pivot]);
        const double diag = a[perm[col]][col];
        if (diag == 0.0) throw Error("singular normal equations in quadratic fit");
        for (int row = col + 1; row < 3; ++row) {
            const double factor = a[perm[row]][col] / diag;
            for (int k = col; k < 3; ++k) a[perm[row]][k] -= factor * a[perm[col]][k];
            b[perm[row]] -= factor * b[perm[col]];
        }
    }
    for (int col = 2; col >= 0; --col) {
        double sum = b[perm[col]];
        for (int k = col + 1; k < 3; ++k) sum -= a[perm[col]][k] * x[k];
        x[col] = sum / a[perm[col]][col];
    }
}

}  // namespace

QuadraticFit fit_quadratic(const Series& series) {
    const auto& pts = series.points;
    const std::size_t n = pts.size();
    if (n < 3) throw std::invalid_argument("quadratic fit needs at least 3 points");

    double sx = 0, sx2 = 0, sx3 = 0, sx4 = 0, sy = 0, sxy = 0, sx2y = 0;
    for (const auto& p : pts) {
        const double x = p.x, x2 = x * x;
        sx += x;
        sx2 += x2;
        sx3 += x2 * x;
        sx4 += x2 * x2;
        sy += p.y;
        sxy += x * p.y;
        sx2y += x2 * p.y;
    }
    const double nn = static_cast<double>(n);

    double a[3][3] = {{nn, sx, sx2}, {sx, sx2, sx3}, {sx2, sx3, sx4}};
    double rhs[3] = {sy, sxy, sx2y};
    double coef[3];  // c, b, a
    solve3(a, rhs, coef);

    QuadraticFit fit;
    fit.c = coef[0];
    fit.b = coef[1];
    fit.a = coef[2];

    const double lin_den = nn * sx2 - sx * sx;
    if (lin_den == 0.0) throw Error("degenerate x values in fit");
    const double lin_slope = (nn * sxy - sx * sy) / lin_den;
    const double lin_intercept = (sy - lin_slope * sx) / nn;

    const double mean_y = sy / nn;
    double ss_tot = 0, ss_res = 0, ss_res_lin = 0;
    for (const auto& p : pts) {
        const double quad = fit.c + p.x * (fit.b + p.x * fit.a);
        const double lin = lin_intercept + lin_slope * p.x;
        ss_tot += (p.y - mean_y) * (p.y - mean_y);
        ss_res += (p.y - quad) * (p.y - quad);
        ss_res_lin += (p.y - lin) * (p.y - lin);
    }
    if (ss_tot == 0.0) {
        // Constant series: the fit passes through it exactly.
        fit.r2 = 1.0;
        fit.r2_linear = 1.0;
        fit.degenerate = true;
    } else {
        fit.r2 = 1.0 - ss_res / ss_tot;
        fit.r2_linear = 1.0 - ss_res_lin / ss_tot;
    }
    return fit;
}

Shape classify_shape(const QuadraticFit& fit, double tolerance) {
    if (fit.a > tolerance) return Shape::Convex;
    if (fit.a < -tolerance) return Shape::Concave;
    return Shape::Linear;
}

double median_share(const Series& series) {
    if (series.points.empty()) throw std::invalid_argument("median of an empty series");
    std::vector<double> ys;
    ys.reserve(series.points.size());
    for (const auto& p : series.points) ys.push_back(p.y);
    std::sort(ys.begin(), ys.end());
    const std::size_t n = ys.size();
    if (n % 2 == 1) return ys[n / 2];
    return 0.5 * (ys[n / 2 - 1] + ys[n / 2]);
}

std::vector<Series> series_by_group(std::span<const CohortObservation> observations) {
    std::set<int> year_set;
    for (const auto& o : observations) year_set.insert(o.year);
    std::map<int, double> year_rank;
    {
        double rank = 0.0;
        for (int y : year_set) year_rank[y] = rank++;
    }
    std::map<std::string, std::map<int, const CohortObservation*>> by_group;
    for (const auto& o : observations) by_group[o.group_id][o.year] = &o;

    std::vector<Series> out;
    out.reserve(by_group.size());
    for (const auto& [group, years] : by_group) {
        Series s;
        s.group_id = group;
        for (const auto& [year, obs] : years)
            s.points.push_back({year_rank.at(year), obs->pct_women_all, obs->n_total});
        out.push_back(std::move(s));
    }
    return out;
}

GroupSummary summarize_group(const Series& series, double shape_tolerance) {
    QuadraticFit fit = fit_quadratic(series);
    GroupSummary summary;
    summary.group_id = series.group_id;
    summary.median_pct = median_share(series);
    summary.a = fit.a;
    summary.shape = classify_shape(fit, shape_tolerance);
    for (const auto& p : series.points) summary.total_authors += p.weight;
    return summary;
}

CompositeSummary composite(std::span<const CohortObservation> observations,
                           double shape_tolerance) {
    if (observations.empty()) throw std::invalid_argument("no observations");

    std::set<std::string> groups;
    std::set<int> years;
    std::map<std::pair<std::string, int>, const CohortObservation*> cell;
    for (const auto& o : observations) {
        groups.insert(o.group_id);
        years.insert(o.year);
        cell[{o.group_id, o.year}] = &o;
    }
    std::vector<std::pair<std::string, int>> gaps;
    for (const auto& g : groups) {
        for (int y : years) {
            if (!cell.contains({g, y})) gaps.emplace_back(g, y);
        }
    }
    if (!gaps.empty()) {
        std::string msg = "missing observations for " + std::to_string(gaps.size()) +
                          " (group, year) pairs:";
        for (const auto& [g, y] : gaps) msg += " (" + g + ", " + std::to_string(y) + ")";
        throw CoverageError(msg, std::move(gaps));
    }

    CompositeSummary comp;
    Series composite_series;
    composite_series.group_id = "composite";
    double rank = 0.0;
    for (int y : years) {
        double female = 0.0, total = 0.0;
        for (const auto& g : groups) {
            const CohortObservation* o = cell.at({g, y});
            female += o->n_female;
            total += o->n_total;
        }
        const double pct = 100.0 * female / total;
        comp.per_year.push_back({y, pct, total});
        composite_series.points.push_back({rank++, pct, total});
    }

    double weighted_medians = 0.0, weight_sum = 0.0;
    for (const auto& g : groups) {
        Series s;
        s.group_id = g;
        double r = 0.0;
        double authors = 0.0;
        for (int y : years) {
            const CohortObservation* o = cell.at({g, y});
            s.points.push_back({r++, o->pct_women_all, o->n_total});
            authors += o->n_total;
        }
        weighted_medians += median_share(s) * authors;
        weight_sum += authors;
    }
    comp.median_weighted = weighted_medians / weight_sum;
    comp.median_series = median_share(composite_series);
    comp.fit = fit_quadratic(composite_series);
    comp.shape = classify_shape(comp.fit, shape_tolerance);
    return comp;
}

std::vector<std::string> quadrant(std::span<const GroupSummary> summaries,
                                  const CompositeSummary& composite) {
    std::vector<std::string> labels;
    labels.reserve(summaries.size());
    for (const auto& s : summaries) {
        if (s.median_pct == composite.median_weighted || s.a == composite.fit.a) {
            labels.emplace_back("on-axis");
            continue;
        }
        std::string label = s.median_pct > composite.median_weighted ? "upper" : "lower";
        label += s.a > composite.fit.a ? "-right" : "-left";
        labels.push_back(std::move(label));
    }
    return labels;
}

TrendReport analyze_trends(std::span<const CohortObservation> observations, TrendOptions options,
                           Execution exec) {
    TrendReport report;
    report.display_scale = options.display_scale;
    report.composite = composite(observations, options.shape_tolerance);
    report.composite.display_scale = options.display_scale;

    std::vector<Series> series = series_by_group(observations);
    report.groups.resize(series.size());
    std::vector<std::exception_ptr> failures(series.size());
    for_each_index(series.size(), exec, [&](std::size_t i) {
        try {
            GroupTrend& trend = report.groups[i];
            trend.fit = fit_quadratic(series[i]);
            trend.summary.group_id = series[i].group_id;
            trend.summary.median_pct = median_share(series[i]);
            trend.summary.a = trend.fit.a;
            trend.summary.shape = classify_shape(trend.fit, options.shape_tolerance);
            for (const auto& p : series[i].points) trend.summary.total_authors += p.weight;
        } catch (...) {
            failures[i] = std::current_exception();
        }
    });
    for (auto& failure : failures) {
        if (failure) std::rethrow_exception(failure);
    }

    std::vector<GroupSummary> summaries;
    summaries.reserve(report.groups.size());
    for (const auto& g : report.groups) summaries.push_back(g.summary);
    std::vector<std::string> labels = quadrant(summaries, report.composite);
    for (std::size_t i = 0; i < labels.size(); ++i) report.groups[i].quadrant = std::move(labels[i]);
    return report;
}

std::string_view to_string(Shape shape) {
    switch (shape) {
        case Shape::Convex: return "convex";
        case Shape::Linear: return "linear";
        case Shape::Concave: return "concave";
    }
    return "?";
}

}  // namespace bibgender
