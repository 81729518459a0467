#ifndef UOP_TEST_SUPPORT_HPP
#define UOP_TEST_SUPPORT_HPP

#include "uop/corpus_io.hpp"

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <unistd.h>

namespace uop::test {

// Unique scratch file removed on destruction.
class TempFile {
  public:
    explicit TempFile(const std::string& stem) {
        static std::atomic<int> counter{0};
        auto dir = std::filesystem::temp_directory_path();
        path_ = (dir / (stem + "-" + std::to_string(::getpid()) + "-" +
                        std::to_string(counter++)))
                    .string();
    }
    ~TempFile() { std::remove(path_.c_str()); }
    const std::string& path() const { return path_; }
    void write(const std::string& content) const {
        std::ofstream out(path_);
        out << content;
    }

  private:
    std::string path_;
};

class TempDir {
  public:
    explicit TempDir(const std::string& stem) {
        static std::atomic<int> counter{0};
        auto dir = std::filesystem::temp_directory_path();
        path_ = (dir / (stem + "-" + std::to_string(::getpid()) + "-" +
                        std::to_string(counter++)))
                    .string();
        std::filesystem::create_directories(path_);
    }
    ~TempDir() { std::filesystem::remove_all(path_); }
    const std::string& path() const { return path_; }
    std::string file(const std::string& name) const { return path_ + "/" + name; }

  private:
    std::string path_;
};

inline LexiconBundle tiny_lexicon() {
    LexiconBundle lex;
    lex.stopwords = {"i", "am", "at", "it", "is", "the", "a", "and", "are", "not", "was"};
    lex.contractions = {{"i'm", "i am"}, {"aren't", "are not"}, {"it's", "it is"}};
    lex.sentiment = {{"great", 0.6}, {"awful", -0.8}, {"nice", 0.5}, {"worst", -0.8}};
    lex.adjectives = {"great", "awful", "nice", "beautiful", "scary", "lovely", "worst"};
    return lex;
}

} // namespace uop::test

#endif
