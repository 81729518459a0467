#ifndef UOP_SENTIMENT_HPP
#define UOP_SENTIMENT_HPP

#include "uop/corpus_io.hpp"

#include <string>

namespace uop {

// Lexicon polarity of a word in [-1,1]; 0 when absent (neutral).
double polarity(const LexiconBundle& lex, const std::string& word);

// Product of the two word polarities: positive when both words carry the
// same sign, zero when either is neutral.
double polarity_product(const LexiconBundle& lex, const std::string& w1,
                        const std::string& w2);

} // namespace uop

#endif
