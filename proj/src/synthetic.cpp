#include "bibgender/synthetic.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

#include "bibgender/errors.hpp"

namespace bibgender {

namespace {

// Deterministic pronounceable names, letters only; a third syllable keeps
// them unique past 400.
std::string synthetic_name(int index) {
    static const char* syllables[] = {"bel", "cor", "dan", "fen", "gal", "hol", "jor",
                                      "kel", "lam", "mer", "nor", "pel", "quin", "ros",
                                      "tam", "ver", "wil", "xan", "yor", "zel"};
    constexpr int n = 20;
    std::string name = std::string(syllables[index % n]) + syllables[(index / n) % n];
    for (int rest = index / (n * n); rest > 0; rest /= n) name += syllables[rest % n];
    name[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(name[0])));
    return name;
}

double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace

std::vector<YearSource> synthetic_drift_sources(const DriftCorpusSpec& spec) {
    if (spec.last_year < spec.first_year) throw std::invalid_argument("bad year range");
    if (spec.name_count < 1) throw std::invalid_argument("need at least one name");

    const int span = spec.last_year - spec.first_year;
    const int stable_every =
        spec.stable_fraction > 0.0 ? std::max(1, static_cast<int>(1.0 / spec.stable_fraction)) : 0;

    std::vector<YearSource> sources;
    sources.reserve(static_cast<std::size_t>(span) + 1);
    for (int year = spec.first_year; year <= spec.last_year; ++year) {
        std::string text;
        for (int i = 0; i < spec.name_count; ++i) {
            double p;
            if (stable_every != 0 && i % stable_every == 0) {
                p = (i % (2 * stable_every) == 0) ? spec.high_p : spec.low_p;
            } else {
                // Transition centers staggered across the interior of the
                // year range; direction alternates.
                double center = spec.first_year + (i + 0.5) * span / spec.name_count;
                double t = logistic((year - center) / spec.transition_width);
                bool male_to_female = (i % 2 == 1);
                double frac = male_to_female ? t : 1.0 - t;
                p = spec.low_p + (spec.high_p - spec.low_p) * frac;
            }
            long female = std::lround(p * static_cast<double>(spec.bearers_per_name));
            female = std::clamp(female, 5L, spec.bearers_per_name - 5);
            long male = spec.bearers_per_name - female;
            std::string name = synthetic_name(i);
            text += name + ",F," + std::to_string(female) + "\n";
            text += name + ",M," + std::to_string(male) + "\n";
        }
        sources.push_back({year, std::move(text)});
    }
    return sources;
}

SsaCorpus make_drift_corpus(const DriftCorpusSpec& spec, Execution exec) {
    return SsaCorpus::load(synthetic_drift_sources(spec), exec);
}

std::vector<LabeledSubgroup> sample_labeled_subgroups(const SsaCorpus& corpus,
                                                      const SubgroupSamplerSpec& spec) {
    if (spec.subgroup_count < 1 || spec.authors_per_subgroup < 1)
        throw std::invalid_argument("subgroup_count and authors_per_subgroup must be positive");

    int pub_min = spec.pub_year_min;
    int pub_max = spec.pub_year_max;
    if (pub_min == 0 && pub_max == 0) {
        // Keep the implied birth years well inside the corpus so every grid
        // shift in a +/-20 neighborhood still lands on loaded years.
        pub_min = corpus.min_year() + spec.offset + 10;
        pub_max = corpus.max_year() + spec.offset - 10;
    }
    if (pub_max < pub_min) throw std::invalid_argument("empty publication-year range");

    // Per birth year: entries in key order with cumulative totals, so
    // sampling is reproducible regardless of hash-map iteration order.
    struct YearDist {
        std::vector<YearTable::Entry> entries;
        std::vector<long> cumulative;
        long total = 0;
    };
    std::map<int, YearDist> dists;
    auto dist_for = [&](int year) -> const YearDist* {
        auto it = dists.find(year);
        if (it == dists.end()) {
            const YearTable* table = corpus.table(year);
            if (!table) return nullptr;
            YearDist d;
            d.entries = table->sorted_entries();
            d.cumulative.reserve(d.entries.size());
            for (const auto& e : d.entries) {
                d.total += e.counts.total();
                d.cumulative.push_back(d.total);
            }
            it = dists.emplace(year, std::move(d)).first;
        }
        return it->second.total > 0 ? &it->second : nullptr;
    };

    std::vector<LabeledSubgroup> subgroups;
    subgroups.reserve(static_cast<std::size_t>(spec.subgroup_count));
    for (int g = 0; g < spec.subgroup_count; ++g) {
        LabeledSubgroup subgroup;
        subgroup.id.push_back(static_cast<char>('A' + g % 26));
        if (g >= 26) subgroup.id += std::to_string(g / 26);
        std::mt19937_64 rng(spec.seed * 1000003ull + static_cast<std::uint64_t>(g));
        std::uniform_int_distribution<int> pub_dist(pub_min, pub_max);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        int guard = 0;
        while (static_cast<int>(subgroup.authors.size()) < spec.authors_per_subgroup) {
            if (++guard > spec.authors_per_subgroup * 100)
                throw Error("sampling failed: publication range maps to corpus gaps");
            int pub_year = pub_dist(rng);
            const YearDist* dist = dist_for(pub_year - spec.offset);
            if (!dist) continue;
            std::uniform_int_distribution<long> pick(0, dist->total - 1);
            long u = pick(rng);
            auto it = std::upper_bound(dist->cumulative.begin(), dist->cumulative.end(), u);
            const auto& entry = dist->entries[static_cast<std::size_t>(
                std::distance(dist->cumulative.begin(), it))];
            double p_female =
                static_cast<double>(entry.counts.female) / static_cast<double>(entry.counts.total());
            subgroup.authors.push_back(
                {entry.raw_name, pub_year, unit(rng) < p_female ? 1.0 : 0.0});
        }
        subgroups.push_back(std::move(subgroup));
    }
    return subgroups;
}

}  // namespace bibgender
