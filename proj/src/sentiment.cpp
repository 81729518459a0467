#include "uop/sentiment.hpp"

#include "uop/util.hpp"

namespace uop {

double polarity(const LexiconBundle& lex, const std::string& word) {
    auto it = lex.sentiment.find(word);
    if (it == lex.sentiment.end()) {
        // case-insensitive contract: retry lowered only when needed
        auto lowered = to_lower(word);
        if (lowered != word)
            it = lex.sentiment.find(lowered);
        if (it == lex.sentiment.end())
            return 0.0;
    }
    return it->second;
}

double polarity_product(const LexiconBundle& lex, const std::string& w1,
                        const std::string& w2) {
    return polarity(lex, w1) * polarity(lex, w2);
}

} // namespace uop
