#include "bibgender/cohort.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <exception>
#include <map>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include "bibgender/csv.hpp"
#include "bibgender/errors.hpp"
#include "bibgender/text.hpp"

namespace bibgender {

namespace {

std::string member_key(const AuthorshipRecord& record) {
    if (!record.author_stable_id.empty()) return "id:" + record.author_stable_id;
    return "name:" + text::normalize_full_name(record.author_full_name);
}

// Returns a reject reason, or empty when the record is usable.
std::string validate_record(const AuthorshipRecord& record, const StudyRange& range) {
    if (record.group_id.empty()) return "missing group_id";
    if (record.article_id.empty()) return "missing article_id";
    if (record.author_full_name.empty()) return "missing author_full_name";
    if (record.year < range.min_year || record.year > range.max_year)
        return "year " + std::to_string(record.year) + " outside study range [" +
               std::to_string(range.min_year) + ", " + std::to_string(range.max_year) + "]";
    return {};
}

}  // namespace

CohortBuild build_cohorts(std::span<const AuthorshipRecord> records, StudyRange range) {
    CohortBuild build;
    std::map<std::pair<std::string, int>, std::size_t> index;
    std::vector<std::unordered_set<std::string>> seen;
    for (const auto& record : records) {
        std::string reason = validate_record(record, range);
        if (!reason.empty()) {
            build.rejects.push_back({record.source_line, std::move(reason), record});
            continue;
        }
        auto [it, inserted] =
            index.try_emplace({record.group_id, record.year}, build.cohorts.size());
        if (inserted) {
            build.cohorts.push_back({record.group_id, record.year, {}});
            seen.emplace_back();
        }
        std::size_t slot = it->second;
        std::string key = member_key(record);
        if (seen[slot].insert(key).second)
            build.cohorts[slot].members.push_back({std::move(key), record.author_full_name});
    }
    std::sort(build.cohorts.begin(), build.cohorts.end(), [](const Cohort& a, const Cohort& b) {
        return std::tie(a.group_id, a.year) < std::tie(b.group_id, b.year);
    });
    return build;
}

CohortObservation observe(const Cohort& cohort, const SsaCorpus& corpus,
                          const InferenceConfig& config, const OverrideTable& overrides) {
    if (cohort.members.empty()) throw std::invalid_argument("observe over an empty cohort");
    CohortObservation obs;
    obs.group_id = cohort.group_id;
    obs.year = cohort.year;
    obs.n_total = static_cast<double>(cohort.members.size());
    std::size_t non_ssa = 0;
    for (const auto& member : cohort.members) {
        AuthorResolution res =
            resolve_author(corpus, member.full_name, cohort.year, config, overrides);
        if (res.classification.reason == UnidentifiedReason::NonSsa) ++non_ssa;
        if (config.mode == Mode::Threshold) {
            switch (res.classification.outcome) {
                case Outcome::Female: obs.n_female += 1.0; break;
                case Outcome::Male: obs.n_male += 1.0; break;
                case Outcome::Unidentified: obs.n_unidentified += 1.0; break;
            }
        } else {
            if (res.estimate) {
                obs.n_female += res.estimate->p_female;
                obs.n_male += 1.0 - res.estimate->p_female;
            } else {
                obs.n_unidentified += 1.0;
            }
        }
    }
    obs.pct_women_all = 100.0 * obs.n_female / obs.n_total;
    const double identified = obs.n_female + obs.n_male;
    obs.pct_women_identified = identified > 0.0 ? 100.0 * obs.n_female / identified : 0.0;
    obs.pct_non_ssa = 100.0 * static_cast<double>(non_ssa) / obs.n_total;
    return obs;
}

std::vector<long> largest_remainder_apportion(std::span<const double> shares, long total) {
    double sum = std::accumulate(shares.begin(), shares.end(), 0.0);
    if (sum <= 0.0) throw std::invalid_argument("apportionment needs a positive share sum");
    std::vector<long> counts(shares.size(), 0);
    std::vector<std::pair<double, std::size_t>> fractions;
    long assigned = 0;
    for (std::size_t i = 0; i < shares.size(); ++i) {
        double quota = shares[i] / sum * static_cast<double>(total);
        counts[i] = static_cast<long>(std::floor(quota));
        assigned += counts[i];
        fractions.emplace_back(quota - std::floor(quota), i);
    }
    std::sort(fractions.begin(), fractions.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    for (long r = total - assigned; r > 0; --r)
        ++counts[fractions[static_cast<std::size_t>(total - assigned - r)].second];
    return counts;
}

CohortObservation windowed_observe(std::span<const AuthorshipRecord> records,
                                   std::string_view group_id, int target_year, int half_window,
                                   const SsaCorpus& corpus, const InferenceConfig& config,
                                   const OverrideTable& overrides, StudyRange range) {
    if (half_window < 0 || half_window > 2)
        throw std::invalid_argument("half_window must be 0, 1, or 2");

    // Target-year population defines the scale; dedup it the normal way.
    std::unordered_set<std::string> target_keys;
    Cohort pooled{std::string(group_id), target_year, {}};
    std::unordered_set<std::string> pooled_keys;
    for (const auto& record : records) {
        if (record.group_id != group_id) continue;
        if (!validate_record(record, range).empty()) continue;
        if (std::abs(record.year - target_year) > half_window) continue;
        std::string key = member_key(record);
        if (record.year == target_year) target_keys.insert(key);
        if (pooled_keys.insert(key).second)
            pooled.members.push_back({std::move(key), record.author_full_name});
    }
    if (target_keys.empty())
        throw std::invalid_argument("no authors in " + std::string(group_id) + " for target year " +
                                    std::to_string(target_year) + "; nothing to scale to");

    CohortObservation obs = observe(pooled, corpus, config, overrides);
    if (half_window == 0) return obs;

    const double target_n = static_cast<double>(target_keys.size());
    const double pooled_n = obs.n_total;
    obs.scaled = true;
    obs.half_window = half_window;
    obs.window_population = pooled_n;
    if (config.mode == Mode::Threshold) {
        const double shares[3] = {obs.n_female, obs.n_male, obs.n_unidentified};
        auto counts = largest_remainder_apportion(shares, static_cast<long>(target_n));
        obs.n_female = static_cast<double>(counts[0]);
        obs.n_male = static_cast<double>(counts[1]);
        obs.n_unidentified = static_cast<double>(counts[2]);
    } else {
        const double ratio = target_n / pooled_n;
        obs.n_female *= ratio;
        obs.n_male *= ratio;
        obs.n_unidentified *= ratio;
    }
    obs.n_total = target_n;
    obs.pct_women_all = 100.0 * obs.n_female / obs.n_total;
    const double identified = obs.n_female + obs.n_male;
    obs.pct_women_identified = identified > 0.0 ? 100.0 * obs.n_female / identified : 0.0;
    // pct_non_ssa is a rate, unchanged by rescaling.
    return obs;
}

std::vector<CohortObservation> observe_all(std::span<const Cohort> cohorts,
                                           const SsaCorpus& corpus, const InferenceConfig& config,
                                           const OverrideTable& overrides, Execution exec) {
    std::vector<CohortObservation> observations(cohorts.size());
    std::vector<std::exception_ptr> failures(cohorts.size());
    for_each_index(cohorts.size(), exec, [&](std::size_t i) {
        try {
            observations[i] = observe(cohorts[i], corpus, config, overrides);
        } catch (...) {
            failures[i] = std::current_exception();
        }
    });
    for (auto& failure : failures) {
        if (failure) std::rethrow_exception(failure);
    }
    return observations;
}

AuthorshipLoad parse_authorship_csv(std::string_view csv_text) {
    AuthorshipLoad load;
    auto rows = csv::parse(csv_text, /*skip_hash_comments=*/true);
    if (rows.empty()) throw ParseError(1, "empty authorship file");
    const auto& header = rows.front().fields;
    const bool has_stable_id = header.size() == 5 && header[4] == "author_stable_id";
    if ((header.size() != 4 && !has_stable_id) || header[0] != "group_id" ||
        header[1] != "year" || header[2] != "article_id" || header[3] != "author_full_name")
        throw ParseError(rows.front().line,
                         "expected header group_id,year,article_id,author_full_name"
                         "[,author_stable_id]");
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& row = rows[i];
        AuthorshipRecord record;
        record.source_line = row.line;
        if (row.fields.size() < 4 || row.fields.size() > 5) {
            load.rejects.push_back({row.line,
                                    "expected 4 or 5 fields, got " +
                                        std::to_string(row.fields.size()),
                                    std::move(record)});
            continue;
        }
        record.group_id = row.fields[0];
        record.article_id = row.fields[2];
        record.author_full_name = row.fields[3];
        if (row.fields.size() == 5) record.author_stable_id = row.fields[4];
        const std::string& year = row.fields[1];
        auto [ptr, ec] = std::from_chars(year.data(), year.data() + year.size(), record.year);
        if (ec != std::errc{} || ptr != year.data() + year.size()) {
            load.rejects.push_back(
                {row.line, "year '" + year + "' is not an integer", std::move(record)});
            continue;
        }
        load.records.push_back(std::move(record));
    }
    return load;
}

std::string observations_to_csv(std::span<const CohortObservation> observations) {
    std::string out =
        "group_id,year,n_total,n_female,n_male,n_unidentified,pct_women_all,"
        "pct_women_identified,pct_non_ssa,scaled,half_window,window_population\n";
    for (const auto& o : observations) {
        std::vector<std::string> fields = {
            o.group_id,
            std::to_string(o.year),
            csv::format_double(o.n_total),
            csv::format_double(o.n_female),
            csv::format_double(o.n_male),
            csv::format_double(o.n_unidentified),
            csv::format_double(o.pct_women_all),
            csv::format_double(o.pct_women_identified),
            csv::format_double(o.pct_non_ssa),
            o.scaled ? "true" : "false",
            std::to_string(o.half_window),
            csv::format_double(o.window_population),
        };
        csv::append_row(out, fields);
    }
    return out;
}

std::string rejects_to_csv(std::span<const RejectedRecord> rejects) {
    std::string out = "source_line,reason,group_id,year,article_id,author_full_name,author_stable_id\n";
    for (const auto& r : rejects) {
        std::vector<std::string> fields = {
            std::to_string(r.source_line),
            r.reason,
            r.record.group_id,
            r.record.year == 0 ? std::string{} : std::to_string(r.record.year),
            r.record.article_id,
            r.record.author_full_name,
            r.record.author_stable_id,
        };
        csv::append_row(out, fields);
    }
    return out;
}

}  // namespace bibgender
