#include <doctest.h>

#include <random>

#include "bibgender/csv.hpp"
#include "bibgender/errors.hpp"
#include "bibgender/text.hpp"

using namespace bibgender;

TEST_CASE("normalize_token folds case, diacritics, and punctuation") {
    CHECK(text::normalize_token("Leslie") == "leslie");
    CHECK(text::normalize_token("LESLIE") == "leslie");
    CHECK(text::normalize_token("José") == "jose");
    CHECK(text::normalize_token("MÜLLER") == "muller");
    CHECK(text::normalize_token("Łukasz") == "lukasz");
    CHECK(text::normalize_token("Žofia") == "zofia");
    CHECK(text::normalize_token("O'Brien") == "obrien");
    CHECK(text::normalize_token("J.") == "j");
    CHECK(text::normalize_token("Åse") == "ase");
    CHECK(text::normalize_token("Þór") == "thor");
    CHECK(text::normalize_token("Groß") == "gross");
}

TEST_CASE("normalize_token keeps non-Latin scripts distinct") {
    CHECK(text::normalize_token("李") == "李");
    CHECK(text::normalize_token("Ωμέγα") != text::normalize_token("Альфа"));
}

TEST_CASE("normalize_full_name collapses whitespace") {
    CHECK(text::normalize_full_name("  Andrea   Asperti ") == "andrea asperti");
    CHECK(text::normalize_full_name("J. McGrath Cohoon") == "j mcgrath cohoon");
}

TEST_CASE("split_name_tokens treats hyphens as separators") {
    auto tokens = text::split_name_tokens("Jean-Pierre Dupont");
    REQUIRE(tokens.size() == 3);
    CHECK(tokens[0] == "Jean");
    CHECK(tokens[1] == "Pierre");
    CHECK(tokens[2] == "Dupont");
}

TEST_CASE("looks_like_initial") {
    CHECK(text::looks_like_initial("J"));
    CHECK(text::looks_like_initial("J."));
    CHECK(text::looks_like_initial("J.R."));
    CHECK_FALSE(text::looks_like_initial("Ed"));
    CHECK_FALSE(text::looks_like_initial("Leslie"));
}

TEST_CASE("csv parses quoting, CRLF, and comments") {
    auto rows = csv::parse("a,\"b,c\",\"say \"\"hi\"\"\"\r\nd,e,f\n");
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].fields == std::vector<std::string>{"a", "b,c", "say \"hi\""});
    CHECK(rows[1].fields == std::vector<std::string>{"d", "e", "f"});
    CHECK(rows[1].line == 2);

    auto with_newline = csv::parse("x,\"two\nlines\",z\n");
    REQUIRE(with_newline.size() == 1);
    CHECK(with_newline[0].fields[1] == "two\nlines");

    auto commented = csv::parse("# note\na,b\n# more\nc,d\n", true);
    REQUIRE(commented.size() == 2);
    CHECK(commented[0].fields[0] == "a");
    CHECK(commented[1].fields[0] == "c");

    CHECK_THROWS_AS(csv::parse("a,\"unterminated\n"), ParseError);
}

TEST_CASE("csv escape round-trips random fields") {
    std::mt19937 rng(17);
    const char alphabet[] = "ab,\"\n x";
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<std::string> fields(3);
        for (auto& f : fields) {
            int len = static_cast<int>(rng() % 8);
            for (int i = 0; i < len; ++i) f.push_back(alphabet[rng() % (sizeof(alphabet) - 1)]);
        }
        // a lone empty row is indistinguishable from a blank line; skip
        if (fields[0].empty() && fields[1].empty() && fields[2].empty()) continue;
        std::string text;
        csv::append_row(text, fields);
        auto rows = csv::parse(text);
        REQUIRE(rows.size() == 1);
        CHECK(rows[0].fields == fields);
    }
}

TEST_CASE("format_double is compact") {
    CHECK(csv::format_double(36.0) == "36");
    CHECK(csv::format_double(3.6) == "3.6");
    CHECK(csv::format_double(-1.65) == "-1.65");
}
