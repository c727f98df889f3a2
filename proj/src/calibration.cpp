#include "bibgender/calibration.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <stdexcept>

#include "bibgender/csv.hpp"
#include "bibgender/errors.hpp"

namespace bibgender {

DifferentialResult differential(const SsaCorpus& corpus, std::span<const LabeledAuthor> subgroup,
                                int year_shift, const InferenceConfig& base) {
    if (subgroup.empty()) throw std::invalid_argument("differential over an empty subgroup");
    InferenceConfig config = base;
    config.year_shift = year_shift;
    double sum = 0.0;
    std::size_t resolvable = 0;
    for (const auto& author : subgroup) {
        auto estimate = infer_pf(corpus, author.given_name, author.publication_year, config);
        if (!estimate) continue;
        sum += std::abs(estimate->p_female - author.true_p_female);
        ++resolvable;
    }
    if (resolvable == 0)
        throw ZeroResolvableError("no SSA-resolvable authors at shift " +
                                  std::to_string(year_shift));
    return {sum / static_cast<double>(resolvable),
            static_cast<double>(resolvable) / static_cast<double>(subgroup.size()), resolvable,
            subgroup.size()};
}

namespace {

std::optional<int> curve_argmin(const CalibrationCurve& curve, std::vector<std::string>& warnings) {
    std::optional<int> best;
    double best_diff = 0.0;
    bool tied = false;
    for (const auto& p : curve.points) {
        if (!p.valid) continue;
        if (!best || p.differential < best_diff) {
            best = p.shift;
            best_diff = p.differential;
            tied = false;
        } else if (p.differential == best_diff) {
            tied = true;  // points are in ascending shift order; keep the smaller
        }
    }
    if (tied)
        warnings.push_back("subgroup " + curve.subgroup_id +
                           ": differential tie; picked the smallest shift " +
                           std::to_string(*best));
    return best;
}

}  // namespace

CalibrationResult calibrate(const SsaCorpus& corpus, std::span<const LabeledSubgroup> subgroups,
                            std::span<const int> grid, const InferenceConfig& base,
                            Execution exec) {
    if (grid.empty()) throw std::invalid_argument("calibration grid is empty");
    if (subgroups.empty()) throw std::invalid_argument("no labeled subgroups");
    base.validate();
    for (int shift : grid) {
        InferenceConfig shifted = base;
        shifted.year_shift = shift;
        shifted.validate();
    }

    std::vector<int> shifts(grid.begin(), grid.end());
    std::sort(shifts.begin(), shifts.end());
    shifts.erase(std::unique(shifts.begin(), shifts.end()), shifts.end());

    CalibrationResult result;
    result.curves.resize(subgroups.size());
    for (std::size_t g = 0; g < subgroups.size(); ++g) {
        result.curves[g].subgroup_id = subgroups[g].id;
        result.curves[g].points.resize(shifts.size());
        if (subgroups[g].authors.empty()) result.curves[g].error = "empty subgroup";
    }

    // One independent cell per (subgroup, shift); results land in
    // preassigned slots so serial and parallel runs are identical.
    const std::size_t cells = subgroups.size() * shifts.size();
    std::vector<std::exception_ptr> failures(cells);
    for_each_index(cells, exec, [&](std::size_t cell) {
        const std::size_t g = cell / shifts.size();
        const std::size_t s = cell % shifts.size();
        if (!result.curves[g].error.empty()) return;
        CurvePoint& point = result.curves[g].points[s];
        point.shift = shifts[s];
        point.total = subgroups[g].authors.size();
        try {
            DifferentialResult d = differential(corpus, subgroups[g].authors, shifts[s], base);
            point.differential = d.mean_abs_diff;
            point.coverage = d.coverage;
            point.resolvable = d.resolvable;
            point.valid = true;
        } catch (const ZeroResolvableError&) {
            point.valid = false;
        } catch (...) {
            failures[cell] = std::current_exception();
        }
    });
    for (auto& failure : failures) {
        if (failure) std::rethrow_exception(failure);
    }

    // Per-subgroup argmin; subgroups with no valid point fail softly.
    for (auto& curve : result.curves) {
        if (!curve.error.empty()) continue;
        curve.argmin = curve_argmin(curve, result.warnings);
        if (!curve.argmin) curve.error = "no SSA-resolvable authors at any grid shift";
    }

    // Pooled curve: concatenation semantics, weighting each subgroup's
    // differential by its resolvable count at that shift.
    result.pooled.subgroup_id = "pooled";
    result.pooled.points.resize(shifts.size());
    for (std::size_t s = 0; s < shifts.size(); ++s) {
        CurvePoint& pooled = result.pooled.points[s];
        pooled.shift = shifts[s];
        double weighted = 0.0;
        for (const auto& curve : result.curves) {
            if (!curve.error.empty()) continue;
            const CurvePoint& p = curve.points[s];
            pooled.total += p.total;
            if (!p.valid) continue;
            weighted += p.differential * static_cast<double>(p.resolvable);
            pooled.resolvable += p.resolvable;
        }
        if (pooled.resolvable > 0) {
            pooled.differential = weighted / static_cast<double>(pooled.resolvable);
            pooled.coverage =
                static_cast<double>(pooled.resolvable) / static_cast<double>(pooled.total);
            pooled.valid = true;
        }
    }
    result.pooled.argmin = curve_argmin(result.pooled, result.warnings);

    // Consensus: modal argmin across subgroups, ties toward 30.
    std::map<int, std::size_t> votes;
    for (const auto& curve : result.curves) {
        if (curve.argmin) ++votes[*curve.argmin];
    }
    if (!votes.empty()) {
        std::size_t top = 0;
        for (const auto& [shift, count] : votes) top = std::max(top, count);
        std::vector<int> leaders;
        for (const auto& [shift, count] : votes) {
            if (count == top) leaders.push_back(shift);
        }
        if (leaders.size() == 1) {
            result.consensus = leaders.front();
        } else if (std::find(leaders.begin(), leaders.end(), 30) != leaders.end()) {
            result.consensus = 30;
            result.warnings.push_back("consensus tie; resolved toward the adopted shift 30");
        } else {
            result.consensus = leaders.front();
            result.warnings.push_back("consensus tie; resolved toward the smallest shift " +
                                      std::to_string(leaders.front()));
        }
        for (const auto& curve : result.curves) {
            if (curve.argmin && *curve.argmin != *result.consensus)
                result.minority.push_back(curve.subgroup_id);
        }
    }
    return result;
}

std::vector<LabeledAuthor> parse_labeled_csv(std::string_view csv_text) {
    auto rows = csv::parse(csv_text, /*skip_hash_comments=*/true);
    if (rows.empty()) throw ParseError(1, "empty labeled-subgroup file");
    const auto& header = rows.front().fields;
    if (header.size() != 3 || header[0] != "given_name" || header[1] != "publication_year" ||
        header[2] != "gender")
        throw ParseError(rows.front().line, "expected header given_name,publication_year,gender");
    std::vector<LabeledAuthor> authors;
    authors.reserve(rows.size() - 1);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& row = rows[i];
        if (row.fields.size() != 3) throw ParseError(row.line, "expected 3 fields");
        LabeledAuthor author;
        author.given_name = row.fields[0];
        if (author.given_name.empty()) throw ParseError(row.line, "empty given_name");
        const std::string& year = row.fields[1];
        auto [ptr, ec] = std::from_chars(year.data(), year.data() + year.size(),
                                         author.publication_year);
        if (ec != std::errc{} || ptr != year.data() + year.size())
            throw ParseError(row.line, "publication_year '" + year + "' is not an integer");
        if (row.fields[2] == "F") {
            author.true_p_female = 1.0;
        } else if (row.fields[2] == "M") {
            author.true_p_female = 0.0;
        } else {
            throw ParseError(row.line, "gender must be F or M, got '" + row.fields[2] + "'");
        }
        authors.push_back(std::move(author));
    }
    return authors;
}

}  // namespace bibgender
