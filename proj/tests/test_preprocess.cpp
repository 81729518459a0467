#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_support.hpp"
#include "uop/porter.hpp"
#include "uop/preprocess.hpp"

#include <cctype>
#include <fstream>
#include <random>
#include <sstream>

using namespace uop;

TEST_CASE("normalize applies every removal rule") {
    auto lex = test::tiny_lexicon();
    auto sentences = normalize("I'm at http://x.co, it is great!!", lex);
    REQUIRE(sentences.size() == 1);
    REQUIRE(sentences[0].surfaces.size() == 1);
    CHECK(sentences[0].surfaces[0] == "great");
    CHECK(sentences[0].stems[0] == "great");
}

TEST_CASE("contractions expand before stopword removal") {
    auto lex = test::tiny_lexicon();
    // "aren't" -> "are not"; both words are stopwords, so nothing remains
    CHECK(normalize("aren't", lex).empty());
    // without the stopwords the expansion itself is visible
    LexiconBundle bare;
    bare.contractions = {{"aren't", "are not"}};
    auto sentences = normalize("aren't", bare);
    REQUIRE(sentences.size() == 1);
    REQUIRE(sentences[0].surfaces.size() == 2);
    CHECK(sentences[0].surfaces[0] == "are");
    CHECK(sentences[0].surfaces[1] == "not");
}

TEST_CASE("empty input yields empty output") {
    auto lex = test::tiny_lexicon();
    CHECK(normalize("", lex).empty());
    CHECK(normalize("   \t  ", lex).empty());
    CHECK(normalize("!!! 123 http://x.co", lex).empty());
}

TEST_CASE("sentences split on terminal punctuation before stripping") {
    LexiconBundle lex;
    auto sentences = normalize("good park. bad road! ugly bridge? fine plaza; done", lex);
    REQUIRE(sentences.size() == 5);
    CHECK(sentences[0].surfaces == std::vector<std::string>{"good", "park"});
    CHECK(sentences[1].surfaces == std::vector<std::string>{"bad", "road"});
    CHECK(sentences[4].surfaces == std::vector<std::string>{"done"});
}

TEST_CASE("normalize is idempotent on its own output") {
    auto lex = test::tiny_lexicon();
    std::mt19937_64 rng(3);
    std::vector<std::string> pool = {"I'm",     "great",  "http://x.co", "123",
                                     "park!!",  "aren't", "it",          "lovely,",
                                     "bridge.", "a",      "scary",       "x"};
    for (int iter = 0; iter < 200; ++iter) {
        std::string text;
        int len = static_cast<int>(rng() % 12);
        for (int i = 0; i < len; ++i)
            text += pool[rng() % pool.size()] + " ";
        auto first = normalize(text, lex);
        std::string joined;
        for (const auto& s : first)
            for (const auto& w : s.surfaces)
                joined += w + " ";
        auto second = normalize(joined, lex);
        std::vector<std::string> flat1, flat2;
        for (const auto& s : first)
            flat1.insert(flat1.end(), s.surfaces.begin(), s.surfaces.end());
        for (const auto& s : second)
            flat2.insert(flat2.end(), s.surfaces.begin(), s.surfaces.end());
        CHECK(flat1 == flat2);
    }
}

TEST_CASE("no output token is a url fragment, digit-bearing or stopword") {
    auto lex = test::tiny_lexicon();
    std::mt19937_64 rng(17);
    std::vector<std::string> pool = {"www.spam.net", "42nd",  "great", "it",   "bench2",
                                     "#tag",         "email", "a1",    "so!?", "nice"};
    for (int iter = 0; iter < 200; ++iter) {
        std::string text;
        for (int i = 0; i < static_cast<int>(rng() % 10); ++i)
            text += pool[rng() % pool.size()] + " ";
        for (const auto& s : normalize(text, lex)) {
            for (const auto& w : s.surfaces) {
                CHECK(w.size() >= 2);
                CHECK(!lex.stopwords.contains(w));
                for (char c : w) {
                    CHECK(std::isalpha(static_cast<unsigned char>(c)));
                }
            }
            CHECK(s.surfaces.size() == s.stems.size());
        }
    }
}

TEST_CASE("porter stem fixed points and reference pairs") {
    CHECK(porter_stem("running") == "run");
    CHECK(porter_stem("cities") == "citi");
    CHECK(porter_stem("run") == "run");
    CHECK(porter_stem("agreed") == "agre");
    CHECK(porter_stem("sky") == "sky");
    CHECK(porter_stem("at") == "at"); // length <= 2 untouched
    CHECK(stem("relational") == "relat");
}

TEST_CASE("stemming is deterministic and never grows the word") {
    std::ifstream vectors(UOP_TEST_DATA_DIR "/porter_vectors.tsv");
    REQUIRE(vectors.is_open());
    std::string line;
    int n = 0;
    while (std::getline(vectors, line) && n < 2000) {
        auto tab = line.find('\t');
        REQUIRE(tab != std::string::npos);
        std::string word = line.substr(0, tab);
        CHECK(porter_stem(word).size() <= word.size());
        CHECK(porter_stem(word) == porter_stem(word));
        ++n;
    }
    CHECK(n == 2000);
}

TEST_CASE("qualifier extraction needs tagger and lexicon to agree") {
    auto lex = test::tiny_lexicon();
    std::vector<RawRecord> records = {
        {"a", "beautiful park", 1, std::nullopt},
        {"b", "the park is great", 2, std::nullopt},
    };
    auto docs = preprocess_corpus(records, lex);
    auto qualifiers = extract_qualifiers(docs, lex);
    CHECK(qualifiers.contains("beautiful"));
    CHECK(qualifiers.contains("great"));
    CHECK(!qualifiers.contains("park")); // not in the adjective lexicon

    // subset of the adjective lexicon, by construction
    for (const auto& q : qualifiers)
        CHECK(lex.adjectives.contains(q));
}

TEST_CASE("suffix heuristic alone is not enough without the lexicon") {
    LexiconBundle lex; // empty adjective lexicon
    std::vector<RawRecord> records = {{"a", "joyous plentiful view", 1, std::nullopt}};
    auto docs = preprocess_corpus(records, lex);
    CHECK(tagged_adjective("joyous", lex));      // -ous suffix
    CHECK(tagged_adjective("plentiful", lex));   // -ful suffix
    CHECK(extract_qualifiers(docs, lex).empty()); // double-check fails
}

TEST_CASE("documents keep id, timestamp and geo through preprocessing") {
    auto lex = test::tiny_lexicon();
    std::vector<RawRecord> records = {{"doc1", "great bridge", 1234, GeoPoint{41.9, -87.6}}};
    auto docs = preprocess_corpus(records, lex);
    REQUIRE(docs.size() == 1);
    CHECK(docs[0].id == "doc1");
    CHECK(docs[0].timestamp == 1234);
    REQUIRE(docs[0].geo.has_value());
    CHECK(docs[0].geo->lat == doctest::Approx(41.9));
    CHECK(surface_tokens(docs[0]) == std::vector<std::string>{"great", "bridge"});
    CHECK(stem_tokens(docs[0]) == std::vector<std::string>{"great", "bridg"});
}
