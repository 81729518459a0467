#ifndef UOP_DICTIONARY_HPP
#define UOP_DICTIONARY_HPP

#include "uop/config.hpp"
#include "uop/corpus_io.hpp"
#include "uop/embeddings.hpp"

#include <map>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace uop {

enum class Polarity { positive, negative };

struct WordGraph {
    struct Edge {
        int u = 0, v = 0; // u < v
        double weight = 0.0;
    };
    std::vector<std::string> vertices; // sorted lexicographically
    std::vector<Edge> edges;           // sorted by (u, v)

    int index_of(const std::string& w) const;
};

// Pure combiner behind pair_score; exposed so the arithmetic can be checked
// against direct evaluation.
inline double blend_similarity(double vector_sim, double sentiment_sim, double alpha) {
    return alpha * vector_sim + (1.0 - alpha) * sentiment_sim;
}

// alpha-blend of embedding cosine and sentiment-polarity product.
// Throws on out-of-vocabulary words.
double pair_score(const EmbeddingModel& model, const LexiconBundle& lex, const std::string& w1,
                  const std::string& w2, double alpha);

struct GraphBuild {
    WordGraph graph;
    std::vector<std::string> dropped; // qualifier words missing from the vocabulary
};

// Complete graph over the in-vocabulary qualifier words, edge weights from
// pair_score. Throws when fewer than min_vertices words survive.
GraphBuild build_graph(const std::set<std::string>& words, const EmbeddingModel& model,
                       const LexiconBundle& lex, double alpha, size_t min_vertices = 3);

// Mean of incident weights over |V|-1 plus beta times the deviation term
// over |V|-2. Requires |V| >= 3.
double vertex_threshold(const WordGraph& graph, int u, double beta);

// Removes every edge not exceeding its endpoint thresholds (computed on the
// input graph) and drops isolated vertices.
WordGraph prune(const WordGraph& graph, double beta,
                PruneRule rule = PruneRule::both_endpoints);

// Overlapping communities: unions of k-cliques reachable through k-cliques
// sharing k-1 vertices. Each community is sorted; communities are ordered
// by descending size, then lexicographically.
std::vector<std::vector<std::string>> k_clique_communities(const WordGraph& graph, int k);

struct Community {
    std::string label;
    std::vector<std::string> members;       // sorted
    std::vector<std::string> overlap_words; // members present in other communities
    Polarity polarity = Polarity::positive;
    std::vector<std::string> stems;         // sorted unique stems of members
};

struct UopDictionary {
    std::vector<Community> communities;
    double alpha = 0.8;
    double beta = 1.13;
    int clique_size = 6;

    // Labels of every community containing any of the stems, sorted unique.
    std::vector<std::string> match_stems(std::span<const std::string> stems) const;
    const std::unordered_map<std::string, std::vector<int>>& stem_index() const;
    void rebuild_stem_index();

  private:
    std::unordered_map<std::string, std::vector<int>> stem_index_;
};

// Polarity from mean member polarity, overlap flags across communities, and
// a deterministic label choice: the non-overlapped member with the highest
// total intra-community pair_score, ties broken lexicographically.
// label_overrides maps a member word to a forced label for its community.
// Events worth surfacing (all-overlap fallback, renamed duplicates) are
// appended to *notes when given.
UopDictionary assemble_dictionary(const std::vector<std::vector<std::string>>& communities,
                                  const LexiconBundle& lex, const EmbeddingModel& model,
                                  double alpha, double beta, int clique_size,
                                  const std::map<std::string, std::string>& label_overrides = {},
                                  std::vector<std::string>* notes = nullptr);

void save_dictionary(const UopDictionary& dict, const std::string& path);
UopDictionary load_dictionary(const std::string& path);

} // namespace uop

#endif
