#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>

#include "bibgender/ssa_corpus.hpp"

namespace bibgender {

// How per-author probabilities become cohort tallies: `Threshold` hard-
// classifies each author (the default; reports keep an explicit
// Unidentified class), `ExpectedValue` sums p(F) fractionally and is kept
// for sensitivity analysis.
enum class Mode { ExpectedValue, Threshold };

struct InferenceConfig {
    int year_shift = 30;        // publication year minus this = SSA lookup year
    int smoothing_window = 0;   // > 0 sums counts over [lookup-w, lookup+w]
    Mode mode = Mode::Threshold;
    double threshold = 0.5;
    double ambiguity_band = 0.0;

    void validate() const;  // throws std::invalid_argument
};

enum class Basis { Ssa, Override };

// p(F) for one author name at one lookup year.
struct GenderEstimate {
    double p_female = 0.0;
    Basis basis = Basis::Ssa;
    int lookup_year = 0;
    long total_count = 0;  // births backing the estimate
};

enum class Outcome { Female, Male, Unidentified };
enum class UnidentifiedReason { InitialsOnly, NonSsa, Ambiguous };

struct Classification {
    Outcome outcome = Outcome::Unidentified;
    std::optional<UnidentifiedReason> reason;  // present iff Unidentified
};

// Personally-verified author -> gender assignments that supersede SSA
// lookups. Every entry must carry a provenance note; keys are normalized
// full names, optionally qualified by affiliation.
class OverrideTable {
public:
    OverrideTable() = default;

    // CSV with header `full_name,gender,provenance[,affiliation]`,
    // gender F or M, '#' comment lines allowed.
    static OverrideTable parse_csv(std::string_view csv_text);

    void add(std::string_view full_name, Outcome gender, std::string_view provenance,
             std::string_view affiliation = {});

    // Qualified entry wins over an unqualified one when both exist.
    std::optional<Outcome> find(std::string_view full_name,
                                std::string_view affiliation = {}) const;

    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

private:
    struct Entry {
        Outcome gender;
        std::string provenance;
    };
    std::unordered_map<std::string, Entry> entries_;
};

// First given-name token of a full author name, skipping leading initials.
// The final token is treated as the family name and never considered.
// Returns none for initials-only (or single-token) forms.
std::optional<std::string> extract_given_name(std::string_view full_name);

// Year-shifted SSA lookup: p(F) = female / (female + male) at
// publication_year - year_shift, summed over the smoothing window when one
// is configured. Returns none when no counts exist (a "non-SSA" name).
std::optional<GenderEstimate> infer_pf(const SsaCorpus& corpus, std::string_view given_name,
                                       int publication_year, const InferenceConfig& config);

// Threshold rule: p >= threshold + band -> Female, p <= threshold - band ->
// Male, else Unidentified(ambiguous). A missing estimate is
// Unidentified(non_ssa). With band 0 a p exactly at the threshold is Female.
Classification classify(const std::optional<GenderEstimate>& estimate,
                        const InferenceConfig& config);

// Replaces the outcome when the table positively identifies the person;
// otherwise returns base unchanged. Idempotent.
Classification apply_overrides(std::string_view full_name, const Classification& base,
                               const OverrideTable& table);

// Fraction of classifications that are Unidentified(non_ssa).
double non_ssa_rate(std::span<const Classification> classifications);

// Whole pipeline for one author: extraction, lookup, classification,
// override. What the cohort module and the lookup command consume.
struct AuthorResolution {
    std::optional<std::string> given_name;
    std::optional<GenderEstimate> estimate;
    Classification classification;
};

AuthorResolution resolve_author(const SsaCorpus& corpus, std::string_view full_name,
                                int publication_year, const InferenceConfig& config,
                                const OverrideTable& overrides);

std::string_view to_string(Outcome outcome);
std::string_view to_string(UnidentifiedReason reason);
std::string_view to_string(Basis basis);
std::string_view to_string(Mode mode);

}  // namespace bibgender
