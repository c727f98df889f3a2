#include <doctest.h>

#include <algorithm>
#include <random>

#include "bibgender/errors.hpp"
#include "bibgender/io.hpp"
#include "bibgender/report.hpp"
#include "bibgender/ssa_corpus.hpp"
#include "bibgender/synthetic.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace bibgender;

TEST_CASE("parse_ssa_year merges F and M rows per name") {
    YearTable table = parse_ssa_year("Leslie,F,505\nLeslie,M,1557\n", 1941);
    auto counts = table.counts("leslie");
    REQUIRE(counts.has_value());
    CHECK(counts->female == 505);
    CHECK(counts->male == 1557);
    CHECK(table.source_rows() == 2);
    CHECK(table.name_count() == 1);
}

TEST_CASE("single-sex names get a zero complement") {
    YearTable table = parse_ssa_year("Zed,M,5", 1941);
    auto counts = table.counts("zed");
    REQUIRE(counts.has_value());
    CHECK(counts->female == 0);
    CHECK(counts->male == 5);
}

TEST_CASE("parse errors carry the line number") {
    CHECK_THROWS_WITH_AS(parse_ssa_year("Ann,F,abc\n", 1941), doctest::Contains("line 1"),
                         ParseError);
    CHECK_THROWS_AS(parse_ssa_year("Ann,F\n", 1941), ParseError);          // field count
    CHECK_THROWS_AS(parse_ssa_year("Ann,F,5,extra\n", 1941), ParseError);  // field count
    CHECK_THROWS_AS(parse_ssa_year("Ann,X,5\n", 1941), ParseError);        // sex code
    CHECK_THROWS_AS(parse_ssa_year("Ann,F,0\n", 1941), ParseError);        // non-positive
    try {
        parse_ssa_year("Ann,F,5\nBob,M,xyz\n", 1941);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
    }
}

TEST_CASE("corpus-integrity violations are distinct from parse errors") {
    CHECK_THROWS_AS(parse_ssa_year("Ann,F,5\nAnn,F,6\n", 1941), IntegrityError);  // dup pair
    CHECK_THROWS_AS(parse_ssa_year("Ann,F,4\n", 1941), IntegrityError);           // below floor
    CHECK_THROWS_AS(parse_ssa_year("R2d2,M,9\n", 1941), IntegrityError);          // digit in name
    // same name, opposite sexes is the normal case, not a duplicate
    CHECK_NOTHROW(parse_ssa_year("Ann,F,5\nAnn,M,6\n", 1941));
}

TEST_CASE("CRLF and blank lines are tolerated") {
    YearTable table = parse_ssa_year("Ann,F,5\r\n\r\nBob,M,7\r\n", 1941);
    CHECK(table.name_count() == 2);
}

TEST_CASE("load assembles the year range and gap list") {
    SsaCorpus two = test_support::corpus_from({{1940, "Ann,F,5\n"}, {1941, "Ann,F,6\n"}});
    CHECK(two.min_year() == 1940);
    CHECK(two.max_year() == 1941);
    CHECK(two.gap_years().empty());

    SsaCorpus gapped = test_support::corpus_from({{1940, "Ann,F,5\n"}, {1942, "Ann,F,6\n"}});
    CHECK(gapped.gap_years() == std::vector<int>{1941});
    CHECK(gapped.has_year(1940));
    CHECK_FALSE(gapped.has_year(1941));

    CHECK_THROWS_AS(
        test_support::corpus_from({{1940, "Ann,F,5\n"}, {1940, "Ann,F,6\n"}}),
        IntegrityError);
    CHECK_THROWS_AS(SsaCorpus::load({}), std::invalid_argument);
}

TEST_CASE("pre-1940 years load but are flagged low-reliability") {
    SsaCorpus corpus = test_support::corpus_from({{1920, "Ann,F,5\n"}, {1950, "Ann,F,9\n"}});
    CHECK(corpus.low_reliability_years() == std::vector<int>{1920});
}

TEST_CASE("counts normalizes the query and distinguishes absence kinds") {
    SsaCorpus corpus = test_support::corpus_from({{1941, "Leslie,F,505\nLeslie,M,1557\nJose,M,40\n"}});
    auto direct = corpus.counts("Leslie", 1941);
    REQUIRE(direct.has_value());
    CHECK(direct->female == 505);
    CHECK(corpus.counts("leslie", 1941) == direct);
    CHECK(corpus.counts("LESLIE", 1941) == direct);
    CHECK(corpus.counts("José", 1941).has_value());  // diacritic folds to the stored key

    CHECK_FALSE(corpus.counts("Xqz", 1941).has_value());  // name absent
    CHECK(corpus.has_year(1941));
    CHECK_FALSE(corpus.counts("Leslie", 1900).has_value());  // year out of range
    CHECK_FALSE(corpus.has_year(1900));
}

TEST_CASE("year table serialization round-trips the (name, f, m) multiset") {
    const std::string original = "Ann,F,5\nAnn,M,6\nZed,M,5\nBea,F,12\n";
    YearTable first = parse_ssa_year(original, 1950);
    YearTable second = parse_ssa_year(to_ssa_text(first), 1950);
    auto a = first.sorted_entries();
    auto b = second.sorted_entries();
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].key == b[i].key);
        CHECK(a[i].counts.female == b[i].counts.female);
        CHECK(a[i].counts.male == b[i].counts.male);
    }
}

TEST_CASE("every entry keeps non-negative counts with one side at the SSA floor") {
    SsaCorpus corpus = make_drift_corpus();
    for (int year : corpus.years()) {
        for (const auto& entry : corpus.table(year)->sorted_entries()) {
            CHECK(entry.counts.female >= 0);
            CHECK(entry.counts.male >= 0);
            CHECK(std::max(entry.counts.female, entry.counts.male) >= 5);
        }
    }
}

TEST_CASE("indexed counts agree with a raw line-scan oracle") {
    // 141-year corpus; compare the indexed store against scanning the raw
    // text of a 3-year subset, for hits and misses alike.
    DriftCorpusSpec spec;
    spec.first_year = 1880;
    spec.last_year = 2020;
    auto sources = synthetic_drift_sources(spec);
    SsaCorpus corpus = SsaCorpus::load(sources);
    CHECK(corpus.years().size() == 141);
    CHECK(corpus.gap_years().empty());

    // reported row total cross-checked by a line-count oracle
    std::size_t lines = 0;
    for (const auto& source : sources)
        lines += static_cast<std::size_t>(std::count(source.text.begin(), source.text.end(), '\n'));
    CHECK(corpus.total_source_rows() == lines);

    std::mt19937 rng(99);
    std::vector<std::string> probes;
    for (int i = 0; i < 30; ++i) {
        // mix of real names (sampled from a year file) and absent ones
        probes.push_back("bel" + std::string(1, static_cast<char>('a' + i % 26)));
    }
    for (const auto& source : {sources[30], sources[70], sources[110]}) {
        const YearTable* table = corpus.table(source.birth_year);
        REQUIRE(table != nullptr);
        auto entries = table->sorted_entries();
        for (int probe = 0; probe < 1000; ++probe) {
            std::string name;
            if (probe % 3 == 0) {
                name = probes[rng() % probes.size()];  // mostly absent
            } else {
                name = entries[rng() % entries.size()].raw_name;
            }
            auto indexed = corpus.counts(name, source.birth_year);
            auto scanned = oracles::line_scan_counts(source.text, name);
            REQUIRE(indexed.has_value() == scanned.found);
            if (indexed) {
                CHECK(indexed->female == scanned.female);
                CHECK(indexed->male == scanned.male);
            }
        }
    }
}

TEST_CASE("parallel corpus load equals sequential construction") {
    DriftCorpusSpec spec;
    spec.first_year = 1900;
    spec.last_year = 1980;
    auto sources = synthetic_drift_sources(spec);
    SsaCorpus serial = SsaCorpus::load(sources, Execution::Serial);
    SsaCorpus parallel = SsaCorpus::load(sources, Execution::Parallel);
    CHECK(corpus_dump_json(serial) == corpus_dump_json(parallel));
    CHECK(serial.total_source_rows() == parallel.total_source_rows());
}

TEST_CASE("load_directory maps yobYYYY filenames and rejects duplicates") {
    test_support::TempDir dir;
    write_file(dir.path() / "yob1940.txt", "Ann,F,5\n");
    write_file(dir.path() / "yob1941.txt", "Ann,F,6\n");
    write_file(dir.path() / "README", "not a corpus file\n");
    SsaCorpus corpus = SsaCorpus::load_directory(dir.path());
    CHECK(corpus.years() == std::vector<int>{1940, 1941});

    write_file(dir.path() / "yob1941.copy.txt", "Ann,F,6\n");
    CHECK_THROWS_AS(SsaCorpus::load_directory(dir.path()), IntegrityError);

    test_support::TempDir empty;
    CHECK_THROWS_AS(SsaCorpus::load_directory(empty.path()), Error);
}
