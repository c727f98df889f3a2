#include "bibgender/ssa_corpus.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <exception>
#include <regex>
#include <set>

#include "bibgender/errors.hpp"
#include "bibgender/io.hpp"
#include "bibgender/text.hpp"

namespace bibgender {

std::optional<NameCounts> YearTable::counts(std::string_view normalized_key) const {
    auto it = entries_.find(std::string(normalized_key));
    if (it == entries_.end()) return std::nullopt;
    return it->second.counts;
}

void YearTable::add_row(std::string_view raw_name, char sex, long count, std::size_t line) {
    if (raw_name.empty()) throw ParseError(line, "empty name");
    for (char c : raw_name) {
        if (std::isdigit(static_cast<unsigned char>(c)))
            throw IntegrityError(line, "name '" + std::string(raw_name) + "' contains a digit");
    }
    if (count < 1) throw ParseError(line, "count must be positive");
    if (count < 5)
        throw IntegrityError(line, "count " + std::to_string(count) + " for '" +
                                       std::string(raw_name) +
                                       "' is below the SSA floor of 5; corpus looks corrupt");
    std::string key = text::normalize_token(raw_name);
    if (key.empty()) throw ParseError(line, "name '" + std::string(raw_name) + "' has no letters");
    Slot& slot = entries_.try_emplace(std::move(key)).first->second;
    if (slot.raw_name.empty()) slot.raw_name = std::string(raw_name);
    if (sex == 'F') {
        if (slot.saw_female)
            throw IntegrityError(line, "duplicate (" + std::string(raw_name) + ", F) row");
        slot.saw_female = true;
        slot.counts.female = count;
    } else {
        if (slot.saw_male)
            throw IntegrityError(line, "duplicate (" + std::string(raw_name) + ", M) row");
        slot.saw_male = true;
        slot.counts.male = count;
    }
    ++source_rows_;
}

std::vector<YearTable::Entry> YearTable::sorted_entries() const {
    std::vector<Entry> out;
    out.reserve(entries_.size());
    for (const auto& [key, slot] : entries_) out.push_back({key, slot.raw_name, slot.counts});
    std::sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) { return a.key < b.key; });
    return out;
}

YearTable parse_ssa_year(std::string_view raw_text, int birth_year) {
    YearTable table(birth_year);
    table.reserve(static_cast<std::size_t>(
        std::count(raw_text.begin(), raw_text.end(), '\n') / 2 + 1));
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < raw_text.size()) {
        ++line_no;
        std::size_t eol = raw_text.find('\n', pos);
        std::string_view line = raw_text.substr(
            pos, eol == std::string_view::npos ? raw_text.size() - pos : eol - pos);
        pos = (eol == std::string_view::npos) ? raw_text.size() : eol + 1;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;

        std::size_t c1 = line.find(',');
        std::size_t c2 = (c1 == std::string_view::npos) ? c1 : line.find(',', c1 + 1);
        if (c1 == std::string_view::npos || c2 == std::string_view::npos ||
            line.find(',', c2 + 1) != std::string_view::npos)
            throw ParseError(line_no, "expected Name,Sex,Count");
        std::string_view name = line.substr(0, c1);
        std::string_view sex = line.substr(c1 + 1, c2 - c1 - 1);
        std::string_view count_text = line.substr(c2 + 1);

        if (sex != "F" && sex != "M")
            throw ParseError(line_no, "unknown sex code '" + std::string(sex) + "'");
        long count = 0;
        auto [ptr, ec] = std::from_chars(count_text.data(), count_text.data() + count_text.size(), count);
        if (ec != std::errc{} || ptr != count_text.data() + count_text.size())
            throw ParseError(line_no, "count '" + std::string(count_text) + "' is not an integer");

        table.add_row(name, sex[0], count, line_no);
    }
    return table;
}

std::string to_ssa_text(const YearTable& table) {
    std::string out;
    for (const auto& entry : table.sorted_entries()) {
        if (entry.counts.female > 0)
            out += entry.raw_name + ",F," + std::to_string(entry.counts.female) + "\n";
        if (entry.counts.male > 0)
            out += entry.raw_name + ",M," + std::to_string(entry.counts.male) + "\n";
    }
    return out;
}

SsaCorpus SsaCorpus::load(std::vector<YearSource> sources, Execution exec) {
    if (sources.empty()) throw std::invalid_argument("at least one SSA source is required");
    std::set<int> seen;
    for (const auto& s : sources) {
        if (!seen.insert(s.birth_year).second)
            throw IntegrityError("duplicate birth year " + std::to_string(s.birth_year));
    }

    // Parse files independently; assembly below is serial, so the result is
    // identical to sequential construction.
    std::vector<std::optional<YearTable>> parsed(sources.size());
    std::vector<std::exception_ptr> failures(sources.size());
    for_each_index(sources.size(), exec, [&](std::size_t i) {
        try {
            parsed[i] = parse_ssa_year(sources[i].text, sources[i].birth_year);
        } catch (...) {
            failures[i] = std::current_exception();
        }
    });
    for (std::size_t i = 0; i < sources.size(); ++i) {
        if (failures[i]) std::rethrow_exception(failures[i]);
    }

    SsaCorpus corpus;
    for (auto& t : parsed) {
        corpus.total_rows_ += t->source_rows();
        corpus.total_names_ += t->name_count();
        int year = t->birth_year();
        corpus.years_.push_back(year);
        corpus.tables_.emplace(year, std::move(*t));
    }
    std::sort(corpus.years_.begin(), corpus.years_.end());
    corpus.min_year_ = corpus.years_.front();
    corpus.max_year_ = corpus.years_.back();
    for (int y = corpus.min_year_; y <= corpus.max_year_; ++y) {
        if (!corpus.tables_.contains(y)) corpus.gaps_.push_back(y);
    }
    return corpus;
}

SsaCorpus SsaCorpus::load_directory(const std::filesystem::path& dir, Execution exec) {
    if (!std::filesystem::is_directory(dir))
        throw Error(dir.string() + " is not a directory");
    static const std::regex yob_pattern("yob(\\d{4})");
    std::vector<std::pair<int, std::filesystem::path>> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        std::string name = entry.path().filename().string();
        std::smatch m;
        if (!std::regex_search(name, m, yob_pattern)) continue;
        files.emplace_back(std::stoi(m[1].str()), entry.path());
    }
    if (files.empty())
        throw Error("no yobYYYY files found in " + dir.string());
    std::sort(files.begin(), files.end());
    for (std::size_t i = 1; i < files.size(); ++i) {
        if (files[i].first == files[i - 1].first)
            throw IntegrityError("both " + files[i - 1].second.filename().string() + " and " +
                                 files[i].second.filename().string() + " map to year " +
                                 std::to_string(files[i].first));
    }
    std::vector<YearSource> sources;
    sources.reserve(files.size());
    for (auto& [year, path] : files) sources.push_back({year, read_file(path)});
    return load(std::move(sources), exec);
}

std::optional<NameCounts> SsaCorpus::counts(std::string_view given_name, int birth_year) const {
    auto it = tables_.find(birth_year);
    if (it == tables_.end()) return std::nullopt;
    return it->second.counts(text::normalize_token(given_name));
}

const YearTable* SsaCorpus::table(int year) const {
    auto it = tables_.find(year);
    return it == tables_.end() ? nullptr : &it->second;
}

std::vector<int> SsaCorpus::low_reliability_years() const {
    std::vector<int> out;
    for (int y : years_) {
        if (y < kSsaReliableFrom) out.push_back(y);
    }
    return out;
}

}  // namespace bibgender
