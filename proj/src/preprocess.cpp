#include "uop/preprocess.hpp"

#include "uop/porter.hpp"
#include "uop/util.hpp"

#include <cctype>

namespace uop {

namespace {

bool is_url_token(const std::string& t) {
    return t.starts_with("http://") || t.starts_with("https://") || t.starts_with("www.");
}

bool has_digit(const std::string& t) {
    for (char c : t)
        if (std::isdigit(static_cast<unsigned char>(c)))
            return true;
    return false;
}

// Strips leading/trailing non-word characters but keeps internal
// apostrophes so contraction surface forms stay intact.
std::string core_of(const std::string& chunk, std::string& leading, std::string& trailing) {
    size_t b = 0, e = chunk.size();
    auto wordish = [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '\'';
    };
    while (b < e && !wordish(chunk[b]))
        ++b;
    while (e > b && !wordish(chunk[e - 1]))
        --e;
    leading = chunk.substr(0, b);
    trailing = chunk.substr(e);
    return chunk.substr(b, e - b);
}

} // namespace

std::vector<Sentence> normalize(const std::string& text, const LexiconBundle& lex) {
    std::string lowered = to_lower(text);

    // URL removal and contraction expansion, whitespace-chunk at a time.
    // Punctuation stays attached so sentence boundaries survive this pass.
    std::string expanded;
    expanded.reserve(lowered.size());
    std::string chunk;
    auto flush_chunk = [&]() {
        if (chunk.empty())
            return;
        if (!is_url_token(chunk)) {
            std::string leading, trailing;
            std::string core = core_of(chunk, leading, trailing);
            auto it = lex.contractions.find(core);
            if (it != lex.contractions.end()) {
                expanded += leading;
                expanded += it->second;
                expanded += trailing;
            } else {
                expanded += chunk;
            }
            expanded += ' ';
        }
        chunk.clear();
    };
    for (char c : lowered) {
        if (std::isspace(static_cast<unsigned char>(c)))
            flush_chunk();
        else
            chunk.push_back(c);
    }
    flush_chunk();

    // Split on terminal punctuation, then tokenize each raw sentence.
    std::vector<Sentence> out;
    Sentence current;
    std::string token;
    auto flush_token = [&]() {
        if (token.empty())
            return;
        std::string t;
        bool digit = has_digit(token);
        for (char c : token)
            if (std::isalpha(static_cast<unsigned char>(c)))
                t.push_back(c);
        token.clear();
        if (digit || t.size() < 2 || lex.stopwords.contains(t))
            return;
        current.surfaces.push_back(t);
        current.stems.push_back(porter_stem(t));
    };
    auto flush_sentence = [&]() {
        flush_token();
        if (!current.surfaces.empty())
            out.push_back(std::move(current));
        current = {};
    };
    for (char c : expanded) {
        if (c == '.' || c == '!' || c == '?' || c == ';') {
            flush_sentence();
        } else if (std::isalnum(static_cast<unsigned char>(c)) || c == '\'') {
            if (c != '\'')
                token.push_back(c);
        } else {
            flush_token();
        }
    }
    flush_sentence();
    return out;
}

std::string stem(const std::string& word) {
    return porter_stem(word);
}

std::vector<Document> preprocess_corpus(const std::vector<RawRecord>& records,
                                        const LexiconBundle& lex) {
    std::vector<Document> docs;
    docs.reserve(records.size());
    for (const auto& rec : records) {
        Document d;
        d.id = rec.id;
        d.timestamp = rec.timestamp;
        d.geo = rec.geo;
        d.sentences = normalize(rec.text, lex);
        docs.push_back(std::move(d));
    }
    return docs;
}

bool tagged_adjective(const std::string& word, const LexiconBundle& lex) {
    if (lex.adjectives.contains(word))
        return true;
    return word.ends_with("ful") || word.ends_with("ous") || word.ends_with("ive") ||
           word.ends_with("able") || word.ends_with("less");
}

std::set<std::string> extract_qualifiers(const std::vector<Document>& corpus,
                                         const LexiconBundle& lex) {
    std::set<std::string> out;
    for (const auto& doc : corpus)
        for (const auto& sent : doc.sentences)
            for (const auto& w : sent.surfaces)
                if (tagged_adjective(w, lex) && lex.adjectives.contains(w))
                    out.insert(w);
    return out;
}

std::vector<std::string> surface_tokens(const Document& doc) {
    std::vector<std::string> out;
    for (const auto& s : doc.sentences)
        out.insert(out.end(), s.surfaces.begin(), s.surfaces.end());
    return out;
}

std::vector<std::string> stem_tokens(const Document& doc) {
    std::vector<std::string> out;
    for (const auto& s : doc.sentences)
        out.insert(out.end(), s.stems.begin(), s.stems.end());
    return out;
}

} // namespace uop
