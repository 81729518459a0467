#ifndef UOP_PREPROCESS_HPP
#define UOP_PREPROCESS_HPP

#include "uop/corpus_io.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace uop {

struct Sentence {
    std::vector<std::string> stems;
    std::vector<std::string> surfaces; // parallel to stems
};

struct Document {
    std::string id;
    std::vector<Sentence> sentences;
    int64_t timestamp = 0;
    std::optional<GeoPoint> geo;
};

// Cleans raw text into token sentences: contractions expanded, URLs,
// numeric tokens, punctuation and stopwords removed, sentences split on
// terminal punctuation, tokens shorter than 2 characters dropped.
std::vector<Sentence> normalize(const std::string& text, const LexiconBundle& lex);

// Porter stem of a lowercase alphabetic token.
std::string stem(const std::string& word);

std::vector<Document> preprocess_corpus(const std::vector<RawRecord>& records,
                                        const LexiconBundle& lex);

// True when the word carries an adjective suffix or appears in the
// adjective lexicon; the cheap stand-in for a POS tagger.
bool tagged_adjective(const std::string& word, const LexiconBundle& lex);

// Surface forms that are both tagged adjective and present in the
// adjective lexicon.
std::set<std::string> extract_qualifiers(const std::vector<Document>& corpus,
                                         const LexiconBundle& lex);

// All surface tokens of a document, in order, with multiplicity.
std::vector<std::string> surface_tokens(const Document& doc);
std::vector<std::string> stem_tokens(const Document& doc);

} // namespace uop

#endif
