#include "bibgender/report.hpp"

#include <algorithm>

#include "bibgender/csv.hpp"

namespace bibgender {

using nlohmann::ordered_json;

ordered_json observations_json(std::span<const CohortObservation> observations) {
    ordered_json out = ordered_json::array();
    for (const auto& o : observations) {
        ordered_json row{
            {"group_id", o.group_id},
            {"year", o.year},
            {"n_total", o.n_total},
            {"n_female", o.n_female},
            {"n_male", o.n_male},
            {"n_unidentified", o.n_unidentified},
            {"pct_women_all", o.pct_women_all},
            {"pct_women_identified", o.pct_women_identified},
            {"pct_non_ssa", o.pct_non_ssa},
            {"scaled", o.scaled},
        };
        if (o.scaled) {
            row["half_window"] = o.half_window;
            row["window_population"] = o.window_population;
        }
        out.push_back(std::move(row));
    }
    return out;
}

ordered_json trend_report_json(const TrendReport& report) {
    ordered_json groups = ordered_json::array();
    for (const auto& g : report.groups) {
        groups.push_back({
            {"group_id", g.summary.group_id},
            {"median", g.summary.median_pct},
            {"a", g.fit.a},
            {"a_scaled", g.fit.a * report.display_scale},
            {"r2", g.fit.r2},
            {"r2_linear", g.fit.r2_linear},
            {"shape", to_string(g.summary.shape)},
            {"quadrant", g.quadrant},
        });
    }
    ordered_json per_year = ordered_json::array();
    for (const auto& y : report.composite.per_year) {
        per_year.push_back({
            {"year", y.year},
            {"pct", y.pct},
            {"total_authors", y.total_authors},
        });
    }
    return ordered_json{
        {"groups", groups},
        {"composite",
         {
             {"per_year", per_year},
             {"median_weighted", report.composite.median_weighted},
             {"median_series", report.composite.median_series},
             {"a", report.composite.fit.a},
             {"a_scaled", report.composite.a_scaled()},
             {"shape", to_string(report.composite.shape)},
         }},
    };
}

std::string trend_report_csv(const TrendReport& report) {
    std::string out =
        "kind,group_id,median,median_series,a,a_scaled,r2,r2_linear,shape,quadrant\n";
    for (const auto& g : report.groups) {
        std::vector<std::string> fields = {
            "group",
            g.summary.group_id,
            csv::format_double(g.summary.median_pct),
            "",
            csv::format_double(g.fit.a),
            csv::format_double(g.fit.a * report.display_scale),
            csv::format_double(g.fit.r2),
            csv::format_double(g.fit.r2_linear),
            std::string(to_string(g.summary.shape)),
            g.quadrant,
        };
        csv::append_row(out, fields);
    }
    std::vector<std::string> fields = {
        "composite",
        "",
        csv::format_double(report.composite.median_weighted),
        csv::format_double(report.composite.median_series),
        csv::format_double(report.composite.fit.a),
        csv::format_double(report.composite.a_scaled()),
        csv::format_double(report.composite.fit.r2),
        csv::format_double(report.composite.fit.r2_linear),
        std::string(to_string(report.composite.shape)),
        "",
    };
    csv::append_row(out, fields);
    return out;
}

namespace {

ordered_json curve_json(const CalibrationCurve& curve) {
    ordered_json points = ordered_json::array();
    for (const auto& p : curve.points) {
        ordered_json point{{"shift", p.shift}};
        if (p.valid) {
            point["differential"] = p.differential;
        } else {
            point["differential"] = nullptr;
        }
        point["coverage"] = p.coverage;
        points.push_back(std::move(point));
    }
    ordered_json out{{"subgroup", curve.subgroup_id}, {"points", points}};
    if (curve.argmin) {
        out["argmin"] = *curve.argmin;
    } else {
        out["argmin"] = nullptr;
    }
    if (!curve.error.empty()) out["error"] = curve.error;
    return out;
}

}  // namespace

ordered_json calibration_json(const CalibrationResult& result) {
    ordered_json curves = ordered_json::array();
    for (const auto& c : result.curves) curves.push_back(curve_json(c));
    ordered_json out{{"curves", curves}, {"pooled", curve_json(result.pooled)}};
    if (result.consensus) {
        out["consensus"] = *result.consensus;
    } else {
        out["consensus"] = nullptr;
    }
    out["minority"] = result.minority;
    out["warnings"] = result.warnings;
    return out;
}

std::string calibration_fig2_csv(const CalibrationResult& result) {
    std::string out = "subgroup,shift,differential,coverage\n";
    auto emit = [&out](const CalibrationCurve& curve) {
        if (!curve.error.empty()) return;
        for (const auto& p : curve.points) {
            std::vector<std::string> fields = {
                curve.subgroup_id,
                std::to_string(p.shift),
                p.valid ? csv::format_double(p.differential) : std::string{},
                csv::format_double(p.coverage),
            };
            csv::append_row(out, fields);
        }
    };
    for (const auto& c : result.curves) emit(c);
    emit(result.pooled);
    return out;
}

std::string fig34_csv(std::span<const CohortObservation> observations) {
    std::vector<const CohortObservation*> sorted;
    sorted.reserve(observations.size());
    for (const auto& o : observations) sorted.push_back(&o);
    std::sort(sorted.begin(), sorted.end(), [](const auto* a, const auto* b) {
        return std::tie(a->group_id, a->year) < std::tie(b->group_id, b->year);
    });
    std::string out = "group,year,pct_women,n_total\n";
    for (const auto* o : sorted) {
        std::vector<std::string> fields = {
            o->group_id,
            std::to_string(o->year),
            csv::format_double(o->pct_women_all),
            csv::format_double(o->n_total),
        };
        csv::append_row(out, fields);
    }
    return out;
}

std::string fig5_csv(const TrendReport& report) {
    std::string out = "group,median,a_scaled,quadrant\n";
    for (const auto& g : report.groups) {
        std::vector<std::string> fields = {
            g.summary.group_id,
            csv::format_double(g.summary.median_pct),
            csv::format_double(g.fit.a * report.display_scale),
            g.quadrant,
        };
        csv::append_row(out, fields);
    }
    return out;
}

ordered_json ingest_summary_json(const SsaCorpus& corpus) {
    ordered_json tables = ordered_json::array();
    for (int year : corpus.years()) {
        const YearTable* t = corpus.table(year);
        tables.push_back({
            {"year", year},
            {"names", t->name_count()},
            {"rows", t->source_rows()},
        });
    }
    return ordered_json{
        {"years", corpus.years()},
        {"year_range", {corpus.min_year(), corpus.max_year()}},
        {"gaps", corpus.gap_years()},
        {"low_reliability_years", corpus.low_reliability_years()},
        {"total_rows", corpus.total_source_rows()},
        {"total_names", corpus.total_names()},
        {"tables", tables},
    };
}

ordered_json corpus_dump_json(const SsaCorpus& corpus) {
    ordered_json years = ordered_json::array();
    for (int year : corpus.years()) {
        ordered_json entries = ordered_json::array();
        for (const auto& e : corpus.table(year)->sorted_entries()) {
            entries.push_back({
                {"name", e.key},
                {"f", e.counts.female},
                {"m", e.counts.male},
            });
        }
        years.push_back({{"year", year}, {"entries", entries}});
    }
    return years;
}

}  // namespace bibgender
