#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bibgender/execution.hpp"

namespace bibgender {

// Birth counts for one given name in one birth year. SSA only publishes a
// name/sex row when it was used five or more times, so a present side is
// always >= 5 and an absent side is 0.
struct NameCounts {
    long female = 0;
    long male = 0;
    long total() const { return female + male; }
    bool operator==(const NameCounts&) const = default;
};

// One birth year of the SSA baby-names corpus: normalized given name ->
// (female, male) counts, with the as-published spelling kept for reporting.
class YearTable {
public:
    explicit YearTable(int birth_year) : birth_year_(birth_year) {}

    int birth_year() const { return birth_year_; }
    std::size_t name_count() const { return entries_.size(); }
    std::size_t source_rows() const { return source_rows_; }

    // Lookup by already-normalized key.
    std::optional<NameCounts> counts(std::string_view normalized_key) const;

    // Merges one `Name,Sex,Count` row. Throws ParseError / IntegrityError.
    void add_row(std::string_view raw_name, char sex, long count, std::size_t line);

    void reserve(std::size_t names) { entries_.reserve(names); }

    struct Entry {
        std::string key;       // normalized
        std::string raw_name;  // as published
        NameCounts counts;
    };
    // Entries in key order, for deterministic dumps and serialization.
    std::vector<Entry> sorted_entries() const;

private:
    struct Slot {
        std::string raw_name;
        NameCounts counts;
        bool saw_female = false;
        bool saw_male = false;
    };
    int birth_year_;
    std::size_t source_rows_ = 0;
    std::unordered_map<std::string, Slot> entries_;
};

// Parses one SSA distribution file (`Name,Sex,Count` lines, no header).
YearTable parse_ssa_year(std::string_view raw_text, int birth_year);

// Re-serializes a YearTable in the SSA layout, entries in key order,
// F row before M row, zero sides omitted.
std::string to_ssa_text(const YearTable& table);

struct YearSource {
    int birth_year = 0;
    std::string text;
};

// SSA years before this are known to undercount female names; loading them
// is fine but they are reported as low-reliability.
inline constexpr int kSsaReliableFrom = 1940;

// Immutable store of YearTables indexed by birth year. Safe for unlimited
// concurrent readers once built.
class SsaCorpus {
public:
    static SsaCorpus load(std::vector<YearSource> sources, Execution exec = Execution::Parallel);

    // Loads every file in `dir` whose name matches yob(\d{4}).
    static SsaCorpus load_directory(const std::filesystem::path& dir,
                                    Execution exec = Execution::Parallel);

    // Normalizes the query (case fold, diacritic strip) and looks it up.
    // A none result means either the year is missing or the name is absent;
    // has_year() distinguishes the two.
    std::optional<NameCounts> counts(std::string_view given_name, int birth_year) const;

    bool has_year(int year) const { return tables_.contains(year); }
    const YearTable* table(int year) const;

    int min_year() const { return min_year_; }
    int max_year() const { return max_year_; }
    const std::vector<int>& years() const { return years_; }
    const std::vector<int>& gap_years() const { return gaps_; }
    std::vector<int> low_reliability_years() const;

    std::size_t total_source_rows() const { return total_rows_; }
    std::size_t total_names() const { return total_names_; }

private:
    std::unordered_map<int, YearTable> tables_;
    std::vector<int> years_;  // sorted
    std::vector<int> gaps_;   // sorted, interior years with no table
    int min_year_ = 0;
    int max_year_ = 0;
    std::size_t total_rows_ = 0;
    std::size_t total_names_ = 0;
};

}  // namespace bibgender
