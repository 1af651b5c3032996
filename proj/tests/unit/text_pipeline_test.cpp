#include <doctest.h>

#include <fstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "forktail/errors.hpp"
#include "forktail/text_pipeline.hpp"

using namespace forktail;

namespace {

std::string join(const std::vector<Token>& tokens) {
    std::string out;
    for (const auto& token : tokens) {
        if (!out.empty()) {
            out += ' ';
        }
        out += token.stem;
    }
    return out;
}

} // namespace

TEST_CASE("tokenize lowercases and splits on anything non-alphanumeric") {
    CHECK(tokenize("") == std::vector<std::string>{});
    CHECK(tokenize("   \t\n ") == std::vector<std::string>{});
    CHECK(tokenize("Searching, at Noon!") ==
          std::vector<std::string>{"searching", "at", "noon"});
    CHECK(tokenize("don't stop") == std::vector<std::string>{"don", "t", "stop"});
    CHECK(tokenize("state-of-the-art") ==
          std::vector<std::string>{"state", "of", "the", "art"});
    CHECK(tokenize("covid19 2021") == std::vector<std::string>{"covid19", "2021"});
    CHECK(tokenize("MiXeD CaSe") == tokenize("mixed case"));
}

TEST_CASE("tokenize keeps every letter and digit in source order") {
    const std::string text = "Ab1,c?D...e2F g";
    std::string kept;
    for (const auto& token : tokenize(text)) {
        kept += token;
    }
    std::string expected;
    for (char c : text) {
        if (std::isalnum(static_cast<unsigned char>(c))) {
            expected += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        }
    }
    CHECK(kept == expected);
}

TEST_CASE("stop-word removal filters by membership and preserves order") {
    const StopwordSet& stops = default_stopwords();
    CHECK(remove_stopwords({"in", "at", "of"}, stops) == std::vector<std::string>{});
    CHECK(remove_stopwords({"keep", "the", "faith"}, stops) ==
          std::vector<std::string>{"keep", "faith"});
    CHECK(remove_stopwords({}, stops) == std::vector<std::string>{});

    StopwordSet none;
    CHECK(remove_stopwords({"the", "of"}, none) ==
          std::vector<std::string>{"the", "of"});
}

TEST_CASE("stop-word sets lowercase their members on insertion") {
    StopwordSet stops{"The", "OF"};
    CHECK(stops.contains("the"));
    CHECK(stops.contains("of"));
    CHECK(stops.size() == 2);
    stops.insert("And");
    CHECK(stops.contains("and"));
    CHECK_FALSE(stops.contains("banana"));
}

TEST_CASE("preprocess chains tokenize, stop removal and stemming") {
    const StopwordSet& stops = default_stopwords();
    const auto tokens = preprocess("the searching cats", stops);
    REQUIRE(tokens.size() == 2);
    CHECK(tokens[0].stem == "search");
    CHECK(tokens[0].surface == "searching");
    CHECK(tokens[0].position == 0);
    CHECK(tokens[1].stem == "cat");
    CHECK(tokens[1].position == 1);
}

TEST_CASE("positions are contiguous over survivors only") {
    const auto tokens =
        preprocess("the market in a crash of the economy", default_stopwords());
    REQUIRE(tokens.size() == 3);
    for (size_t i = 0; i < tokens.size(); ++i) {
        CHECK(tokens[i].position == i);
    }
    CHECK(tokens[0].stem == "market");
    CHECK(tokens[1].stem == "crash");
    CHECK(tokens[2].stem == "economi");
}

TEST_CASE("preprocess is stable when re-fed its own stems") {
    // Pool chosen so no stem collides with a stop word or re-stems shorter.
    const std::vector<std::string> texts = {
        "Searching the market for a crash",
        "economy collapsed yesterday",
        "retrieval systems ranking documents",
    };
    const StopwordSet& stops = default_stopwords();
    for (const auto& text : texts) {
        const auto first = preprocess(text, stops);
        const auto second = preprocess(join(first), stops);
        REQUIRE(first.size() == second.size());
        for (size_t i = 0; i < first.size(); ++i) {
            CHECK(first[i].stem == second[i].stem);
            CHECK(first[i].position == second[i].position);
        }
    }
}

TEST_CASE("sentence splitting honors terminators, fragments and ordinals") {
    const auto two = split_sentences("A b. C d!");
    REQUIRE(two.size() == 2);
    CHECK(two[0].text == "A b.");
    CHECK(two[0].ordinal == 0);
    CHECK(two[1].text == "C d!");
    CHECK(two[1].ordinal == 1);

    const auto three = split_sentences("x. y? z");
    REQUIRE(three.size() == 3);
    CHECK(three[2].text == "z");
    CHECK(three[2].ordinal == 2);

    CHECK(split_sentences("").empty());
    CHECK(split_sentences("   ").empty());
}

TEST_CASE("sentence splitting skips listed abbreviations") {
    const auto spans = split_sentences("Mr. Smith arrived. He sat down.");
    REQUIRE(spans.size() == 2);
    CHECK(spans[0].text == "Mr. Smith arrived.");
    CHECK(spans[1].text == "He sat down.");

    const auto dr = split_sentences("Dr. Jones spoke. Applause followed!");
    REQUIRE(dr.size() == 2);
    CHECK(dr[0].text == "Dr. Jones spoke.");
}

TEST_CASE("sentence spans are trimmed and never empty") {
    const auto spans = split_sentences("  One.   Two!  Three?   ");
    REQUIRE(spans.size() == 3);
    for (const auto& span : spans) {
        CHECK_FALSE(span.text.empty());
        CHECK(span.text.front() != ' ');
        CHECK(span.text.back() != ' ');
    }
    CHECK(spans[0].text == "One.");
    CHECK(spans[1].text == "Two!");
    CHECK(spans[2].text == "Three?");
}

TEST_CASE("stop-list files support comments and blank lines") {
    fixtures::TempDir dir("stops");
    const auto file = dir.file("stops.txt");
    {
        std::ofstream out(file);
        out << "# custom list\n\nfoo\nBar\n  baz  \n";
    }
    const StopwordSet stops = load_stopwords(file);
    CHECK(stops.size() == 3);
    CHECK(stops.contains("foo"));
    CHECK(stops.contains("bar"));
    CHECK(stops.contains("baz"));
    CHECK_FALSE(stops.contains("# custom list"));

    CHECK_THROWS_AS(load_stopwords(dir.file("missing.txt")), forktail::DataError);
}

TEST_CASE("pipeline bundles a stop list and exposes plain stems") {
    Pipeline pipeline;
    CHECK(pipeline.stems("the searching cats") ==
          std::vector<std::string>{"search", "cat"});
    CHECK(pipeline.stems("of the in at").empty());

    Pipeline custom{StopwordSet{"cats"}};
    CHECK(custom.stems("the searching cats") ==
          std::vector<std::string>{"the", "search"});
}

TEST_CASE("default stop list covers the usual function words") {
    const StopwordSet& stops = default_stopwords();
    for (const char* word : {"the", "a", "an", "of", "in", "at", "is", "and"}) {
        CAPTURE(word);
        CHECK(stops.contains(word));
    }
    CHECK_FALSE(stops.contains("market"));
    CHECK(stops.size() >= 100);
}
