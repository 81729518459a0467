#ifndef UOP_EMBEDDINGS_HPP
#define UOP_EMBEDDINGS_HPP

#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace uop {

struct TrainConfig {
    int window = 8;          // context reaches window-1 positions
    int min_count = 20;
    int dim = 300;
    int epochs = 5;
    double learning_rate = 0.025;
    uint64_t seed = 1;
    int workers = 1; // >1 = hogwild updates, run-dependent output
};

using TokenSentences = std::vector<std::vector<std::string>>;

struct EmbeddingModel {
    std::vector<std::string> words;    // index -> word, by (count desc, word asc)
    std::vector<int64_t> counts;       // training-corpus frequency per word
    std::vector<float> vectors;        // words.size() x config.dim, row-major
    TrainConfig config;
    std::vector<double> epoch_loss;    // mean hierarchical-softmax loss per epoch
    std::unordered_map<std::string, int> vocab;

    int index_of(const std::string& w) const {
        auto it = vocab.find(w);
        return it == vocab.end() ? -1 : it->second;
    }
    std::span<const float> vector_of(int idx) const {
        return {vectors.data() + static_cast<size_t>(idx) * config.dim,
                static_cast<size_t>(config.dim)};
    }
    size_t size() const { return words.size(); }
};

// Skip-gram with a Huffman-tree hierarchical softmax. Deterministic for a
// fixed seed when config.workers == 1. Throws if no word reaches min_count.
EmbeddingModel train(const TokenSentences& corpus, const TrainConfig& config);

// Cosine similarity of two in-vocabulary words; throws on unknown words.
double cosine_similarity(const EmbeddingModel& model, const std::string& w1,
                         const std::string& w2);

// 0..100 likeness of a token bag to a word community: clamped cosine between
// the mean token vector and the community centroid, scaled by 100. A bag
// with no in-vocabulary tokens scores 0; a community with no in-vocabulary
// words is an error.
double community_score(const EmbeddingModel& model, std::span<const std::string> tokens,
                       const std::set<std::string>& community);

// Centroid of the community's in-vocabulary words; throws if none.
std::vector<double> community_centroid(const EmbeddingModel& model,
                                       const std::set<std::string>& community);

// Mean vector of in-vocabulary tokens; false when no token is known.
bool mean_vector(const EmbeddingModel& model, std::span<const std::string> tokens,
                 std::vector<double>& out);

void save_model(const EmbeddingModel& model, const std::string& path);
EmbeddingModel load_model(const std::string& path);

namespace detail {

// Huffman coding of the vocabulary by frequency; exposes the structure the
// training loop walks so tests can validate it.
struct HuffmanTree {
    std::vector<std::vector<uint8_t>> codes;  // per word, root-to-leaf branch bits
    std::vector<std::vector<int>> points;     // per word, internal node ids on the path
    int internal_nodes = 0;
};

HuffmanTree build_huffman(const std::vector<int64_t>& counts);

} // namespace detail

} // namespace uop

#endif
