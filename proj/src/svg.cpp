#include "bibgender/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>

namespace bibgender {

namespace {

const char* kPalette[] = {
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948", "#b07aa1",
    "#ff9da7", "#9c755f", "#bab0ac", "#1f77b4", "#8c564b", "#2ca02c", "#d62728",
};
constexpr int kPaletteSize = 14;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

void open_svg(std::string& out, int w, int h) {
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(w) +
           "\" height=\"" + std::to_string(h) + "\" viewBox=\"0 0 " + std::to_string(w) + " " +
           std::to_string(h) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

void text_at(std::string& out, double x, double y, const std::string& s,
             const char* anchor = "middle", int size = 12) {
    out += "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" font-family=\"sans-serif\" font-size=\"" +
           std::to_string(size) + "\" text-anchor=\"" + anchor + "\">" + s + "</text>\n";
}

void line(std::string& out, double x1, double y1, double x2, double y2, const char* stroke,
          const char* extra = "") {
    out += "<line x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x2) + "\" y2=\"" +
           num(y2) + "\" stroke=\"" + stroke + "\" " + extra + "/>\n";
}

}  // namespace

std::string bubble_chart_svg(std::span<const CohortObservation> observations) {
    const int width = 900, height = 540;
    const double left = 70, right = 200, top = 40, bottom = 60;
    const double plot_w = width - left - right, plot_h = height - top - bottom;

    std::set<std::string> group_set;
    int year_min = 0, year_max = 0;
    double pct_max = 0, n_max = 1;
    bool first = true;
    for (const auto& o : observations) {
        group_set.insert(o.group_id);
        if (first || o.year < year_min) year_min = o.year;
        if (first || o.year > year_max) year_max = o.year;
        pct_max = std::max(pct_max, o.pct_women_all);
        n_max = std::max(n_max, o.n_total);
        first = false;
    }
    if (first) return "<svg xmlns=\"http://www.w3.org/2000/svg\"/>";
    pct_max = std::min(100.0, std::max(10.0, pct_max * 1.15));
    const double year_span = std::max(1, year_max - year_min);

    auto sx = [&](double year) { return left + (year - year_min) / year_span * plot_w; };
    auto sy = [&](double pct) { return top + plot_h - pct / pct_max * plot_h; };
    auto radius = [&](double n) { return std::max(2.5, std::sqrt(n / n_max) * 26.0); };

    std::map<std::string, int> color;
    int idx = 0;
    for (const auto& g : group_set) color[g] = idx++ % kPaletteSize;

    std::string out;
    open_svg(out, width, height);
    text_at(out, left + plot_w / 2, 22, "Women as a percentage of research authors", "middle", 15);

    // axes and gridlines
    line(out, left, top, left, top + plot_h, "#333");
    line(out, left, top + plot_h, left + plot_w, top + plot_h, "#333");
    for (double pct = 0; pct <= pct_max; pct += 10) {
        line(out, left, sy(pct), left + plot_w, sy(pct), "#ddd");
        text_at(out, left - 8, sy(pct) + 4, num(pct), "end", 11);
    }
    std::set<int> years;
    for (const auto& o : observations) years.insert(o.year);
    for (int y : years) text_at(out, sx(y), top + plot_h + 20, std::to_string(y), "middle", 11);

    std::vector<const CohortObservation*> sorted;
    for (const auto& o : observations) sorted.push_back(&o);
    std::sort(sorted.begin(), sorted.end(), [](const auto* a, const auto* b) {
        return std::tie(a->group_id, a->year) < std::tie(b->group_id, b->year);
    });
    for (const auto* o : sorted) {
        out += "<circle cx=\"" + num(sx(o->year)) + "\" cy=\"" + num(sy(o->pct_women_all)) +
               "\" r=\"" + num(radius(o->n_total)) + "\" fill=\"" +
               kPalette[color[o->group_id]] + "\" fill-opacity=\"0.55\" stroke=\"" +
               kPalette[color[o->group_id]] + "\"/>\n";
    }

    double legend_y = top + 8;
    for (const auto& g : group_set) {
        out += "<circle cx=\"" + num(width - right + 18) + "\" cy=\"" + num(legend_y) +
               "\" r=\"6\" fill=\"" + kPalette[color[g]] + "\" fill-opacity=\"0.7\"/>\n";
        text_at(out, width - right + 30, legend_y + 4, g, "start", 11);
        legend_y += 18;
    }
    out += "</svg>\n";
    return out;
}

std::string quadrant_chart_svg(const TrendReport& report) {
    const int width = 760, height = 560;
    const double left = 80, right = 40, top = 50, bottom = 70;
    const double plot_w = width - left - right, plot_h = height - top - bottom;

    double a_min = report.composite.a_scaled(), a_max = a_min;
    double m_min = report.composite.median_weighted, m_max = m_min;
    for (const auto& g : report.groups) {
        const double a = g.fit.a * report.display_scale;
        a_min = std::min(a_min, a);
        a_max = std::max(a_max, a);
        m_min = std::min(m_min, g.summary.median_pct);
        m_max = std::max(m_max, g.summary.median_pct);
    }
    const double a_pad = std::max(10.0, (a_max - a_min) * 0.15);
    const double m_pad = std::max(2.0, (m_max - m_min) * 0.15);
    a_min -= a_pad;
    a_max += a_pad;
    m_min = std::max(0.0, m_min - m_pad);
    m_max += m_pad;

    auto sx = [&](double a) { return left + (a - a_min) / (a_max - a_min) * plot_w; };
    auto sy = [&](double m) { return top + plot_h - (m - m_min) / (m_max - m_min) * plot_h; };

    std::string out;
    open_svg(out, width, height);
    text_at(out, left + plot_w / 2, 24, "Median women's authorship vs growth-curve shape", "middle", 15);
    line(out, left, top, left, top + plot_h, "#333");
    line(out, left, top + plot_h, left + plot_w, top + plot_h, "#333");
    text_at(out, left + plot_w / 2, height - 16,
            "x^2 coefficient (scaled x" + std::to_string(report.display_scale) +
                "): concave | convex", "middle", 12);

    // composite crosshair
    line(out, sx(report.composite.a_scaled()), top, sx(report.composite.a_scaled()), top + plot_h,
         "red", "stroke-dasharray=\"4,3\"");
    line(out, left, sy(report.composite.median_weighted), left + plot_w,
         sy(report.composite.median_weighted), "red", "stroke-dasharray=\"4,3\"");
    text_at(out, sx(report.composite.a_scaled()) + 4, top + 12, "composite", "start", 11);

    for (const auto& g : report.groups) {
        const double x = sx(g.fit.a * report.display_scale);
        const double y = sy(g.summary.median_pct);
        out += "<circle cx=\"" + num(x) + "\" cy=\"" + num(y) +
               "\" r=\"5\" fill=\"#4e79a7\"/>\n";
        text_at(out, x + 8, y + 4, g.summary.group_id, "start", 11);
    }
    out += "</svg>\n";
    return out;
}

}  // namespace bibgender
