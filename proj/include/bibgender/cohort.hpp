#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bibgender/execution.hpp"
#include "bibgender/gender_inference.hpp"
#include "bibgender/ssa_corpus.hpp"

namespace bibgender {

// One (article, author) appearance in one group's publications.
struct AuthorshipRecord {
    std::string group_id;
    int year = 0;
    std::string article_id;
    std::string author_full_name;
    std::string author_stable_id;  // optional persistent id; wins over the name
    std::size_t source_line = 0;   // CSV line when loaded from a file, else 0
};

// The deduplicated author population for one group in one year. A person
// is keyed by stable id when present, else by normalized full name; the
// same person publishing in two years appears in both cohorts.
struct CohortMember {
    std::string key;
    std::string full_name;  // first-seen spelling
};

struct Cohort {
    std::string group_id;
    int year = 0;
    std::vector<CohortMember> members;
};

struct RejectedRecord {
    std::size_t source_line = 0;
    std::string reason;
    AuthorshipRecord record;
};

struct StudyRange {
    int min_year = 0;
    int max_year = 9999;
};

struct CohortBuild {
    std::vector<Cohort> cohorts;  // sorted by (group_id, year)
    std::vector<RejectedRecord> rejects;
};

CohortBuild build_cohorts(std::span<const AuthorshipRecord> records, StudyRange range = {});

// Per-cohort gender tallies. In Threshold mode counts are integers and sum
// exactly; in ExpectedValue mode n_female/n_male are fractional sums of
// p(F) and sum to n_total within 1e-9.
struct CohortObservation {
    std::string group_id;
    int year = 0;
    double n_total = 0.0;
    double n_female = 0.0;
    double n_male = 0.0;
    double n_unidentified = 0.0;
    double pct_women_all = 0.0;         // denominator includes Unidentified
    double pct_women_identified = 0.0;  // denominator = Female + Male only
    double pct_non_ssa = 0.0;
    bool scaled = false;     // oversampling correction applied
    int half_window = 0;     // window half-width when scaled
    double window_population = 0.0;  // pooled dedup size the shares came from
};

CohortObservation observe(const Cohort& cohort, const SsaCorpus& corpus,
                          const InferenceConfig& config, const OverrideTable& overrides);

// Oversampling correction: pools the group's records over
// [target_year - half_window, target_year + half_window] with cross-window
// dedup, computes gender shares on the pooled cohort, then rescales the
// counts to the target year's own deduplicated population size
// (largest-remainder apportionment in Threshold mode so classes sum
// exactly). half_window 0 degenerates to observe().
CohortObservation windowed_observe(std::span<const AuthorshipRecord> records,
                                   std::string_view group_id, int target_year, int half_window,
                                   const SsaCorpus& corpus, const InferenceConfig& config,
                                   const OverrideTable& overrides, StudyRange range = {});

std::vector<CohortObservation> observe_all(std::span<const Cohort> cohorts,
                                           const SsaCorpus& corpus, const InferenceConfig& config,
                                           const OverrideTable& overrides,
                                           Execution exec = Execution::Parallel);

// Integer apportionment of `total` across `shares` (any non-negative
// weights): floor the quotas, then hand out the remainder by largest
// fractional part (ties to the lower index).
std::vector<long> largest_remainder_apportion(std::span<const double> shares, long total);

// CSV with header `group_id,year,article_id,author_full_name` plus optional
// `author_stable_id`. Structurally bad rows land in rejects, not errors.
struct AuthorshipLoad {
    std::vector<AuthorshipRecord> records;
    std::vector<RejectedRecord> rejects;
};
AuthorshipLoad parse_authorship_csv(std::string_view csv_text);

std::string observations_to_csv(std::span<const CohortObservation> observations);
std::string rejects_to_csv(std::span<const RejectedRecord> rejects);

}  // namespace bibgender
