#include "bibgender/gender_inference.hpp"

#include <stdexcept>

#include "bibgender/csv.hpp"
#include "bibgender/errors.hpp"
#include "bibgender/text.hpp"

namespace bibgender {

void InferenceConfig::validate() const {
    if (year_shift < 0 || year_shift > 100)
        throw std::invalid_argument("year_shift must be in [0, 100]");
    if (smoothing_window < 0)
        throw std::invalid_argument("smoothing_window must be non-negative");
    if (ambiguity_band < 0.0)
        throw std::invalid_argument("ambiguity_band must be non-negative");
    if (threshold - ambiguity_band <= 0.0 || threshold + ambiguity_band >= 1.0)
        throw std::invalid_argument("threshold +/- ambiguity_band must stay inside (0, 1)");
}

namespace {

std::string override_key(std::string_view full_name, std::string_view affiliation) {
    std::string key = text::normalize_full_name(full_name);
    if (!affiliation.empty()) {
        key.push_back('|');
        key.append(text::normalize_full_name(affiliation));
    }
    return key;
}

}  // namespace

OverrideTable OverrideTable::parse_csv(std::string_view csv_text) {
    OverrideTable table;
    auto rows = csv::parse(csv_text, /*skip_hash_comments=*/true);
    if (rows.empty()) return table;
    const auto& header = rows.front().fields;
    if (header.size() < 3 || header[0] != "full_name" || header[1] != "gender" ||
        header[2] != "provenance")
        throw ParseError(rows.front().line,
                         "expected header full_name,gender,provenance[,affiliation]");
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& row = rows[i];
        if (row.fields.size() < 3 || row.fields.size() > 4)
            throw ParseError(row.line, "expected 3 or 4 fields");
        Outcome gender;
        if (row.fields[1] == "F") {
            gender = Outcome::Female;
        } else if (row.fields[1] == "M") {
            gender = Outcome::Male;
        } else {
            throw ParseError(row.line, "gender must be F or M, got '" + row.fields[1] + "'");
        }
        std::string_view affiliation = row.fields.size() == 4 ? row.fields[3] : std::string_view{};
        try {
            table.add(row.fields[0], gender, row.fields[2], affiliation);
        } catch (const IntegrityError& e) {
            throw IntegrityError(row.line, e.what());
        }
    }
    return table;
}

void OverrideTable::add(std::string_view full_name, Outcome gender, std::string_view provenance,
                        std::string_view affiliation) {
    if (gender == Outcome::Unidentified)
        throw std::invalid_argument("override gender must be Female or Male");
    if (provenance.empty())
        throw IntegrityError("override for '" + std::string(full_name) +
                             "' lacks a provenance note");
    std::string key = override_key(full_name, affiliation);
    if (key.empty()) throw std::invalid_argument("override has an empty name");
    auto [it, inserted] = entries_.emplace(std::move(key), Entry{gender, std::string(provenance)});
    if (!inserted)
        throw IntegrityError("duplicate override for '" + std::string(full_name) + "'");
}

std::optional<Outcome> OverrideTable::find(std::string_view full_name,
                                           std::string_view affiliation) const {
    if (!affiliation.empty()) {
        auto it = entries_.find(override_key(full_name, affiliation));
        if (it != entries_.end()) return it->second.gender;
    }
    auto it = entries_.find(override_key(full_name, {}));
    if (it == entries_.end()) return std::nullopt;
    return it->second.gender;
}

std::optional<std::string> extract_given_name(std::string_view full_name) {
    auto tokens = text::split_name_tokens(full_name);
    if (tokens.size() < 2) return std::nullopt;  // no leading token before the surname
    for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
        if (text::looks_like_initial(tokens[i])) continue;
        return std::string(tokens[i]);
    }
    return std::nullopt;
}

std::optional<GenderEstimate> infer_pf(const SsaCorpus& corpus, std::string_view given_name,
                                       int publication_year, const InferenceConfig& config) {
    config.validate();
    const int lookup_year = publication_year - config.year_shift;
    long female = 0;
    long male = 0;
    for (int y = lookup_year - config.smoothing_window; y <= lookup_year + config.smoothing_window;
         ++y) {
        if (auto c = corpus.counts(given_name, y)) {
            female += c->female;
            male += c->male;
        }
    }
    const long total = female + male;
    if (total <= 0) return std::nullopt;
    return GenderEstimate{static_cast<double>(female) / static_cast<double>(total), Basis::Ssa,
                          lookup_year, total};
}

Classification classify(const std::optional<GenderEstimate>& estimate,
                        const InferenceConfig& config) {
    config.validate();
    if (!estimate) return {Outcome::Unidentified, UnidentifiedReason::NonSsa};
    const double p = estimate->p_female;
    if (p >= config.threshold + config.ambiguity_band) return {Outcome::Female, std::nullopt};
    if (p <= config.threshold - config.ambiguity_band) return {Outcome::Male, std::nullopt};
    return {Outcome::Unidentified, UnidentifiedReason::Ambiguous};
}

Classification apply_overrides(std::string_view full_name, const Classification& base,
                               const OverrideTable& table) {
    auto gender = table.find(full_name);
    if (!gender) return base;
    return {*gender, std::nullopt};
}

double non_ssa_rate(std::span<const Classification> classifications) {
    if (classifications.empty())
        throw std::invalid_argument("non_ssa_rate over an empty sequence");
    std::size_t non_ssa = 0;
    for (const auto& c : classifications) {
        if (c.outcome == Outcome::Unidentified && c.reason == UnidentifiedReason::NonSsa)
            ++non_ssa;
    }
    return static_cast<double>(non_ssa) / static_cast<double>(classifications.size());
}

AuthorResolution resolve_author(const SsaCorpus& corpus, std::string_view full_name,
                                int publication_year, const InferenceConfig& config,
                                const OverrideTable& overrides) {
    AuthorResolution res;
    res.given_name = extract_given_name(full_name);
    if (res.given_name) {
        res.estimate = infer_pf(corpus, *res.given_name, publication_year, config);
        res.classification = classify(res.estimate, config);
    } else {
        res.classification = {Outcome::Unidentified, UnidentifiedReason::InitialsOnly};
    }
    if (auto gender = overrides.find(full_name)) {
        res.classification = {*gender, std::nullopt};
        res.estimate = GenderEstimate{*gender == Outcome::Female ? 1.0 : 0.0, Basis::Override,
                                      publication_year - config.year_shift, 0};
    }
    return res;
}

std::string_view to_string(Outcome outcome) {
    switch (outcome) {
        case Outcome::Female: return "Female";
        case Outcome::Male: return "Male";
        case Outcome::Unidentified: return "Unidentified";
    }
    return "?";
}

std::string_view to_string(UnidentifiedReason reason) {
    switch (reason) {
        case UnidentifiedReason::InitialsOnly: return "initials_only";
        case UnidentifiedReason::NonSsa: return "non_ssa";
        case UnidentifiedReason::Ambiguous: return "ambiguous";
    }
    return "?";
}

std::string_view to_string(Basis basis) {
    return basis == Basis::Ssa ? "ssa" : "override";
}

std::string_view to_string(Mode mode) {
    return mode == Mode::Threshold ? "threshold" : "expected_value";
}

}  // namespace bibgender
