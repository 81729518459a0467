#include "uop/embeddings.hpp"

#include "uop/error.hpp"
#include "uop/util.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace uop {

namespace detail {

HuffmanTree build_huffman(const std::vector<int64_t>& counts) {
    // Two-pointer construction over the count-sorted vocabulary: counts must
    // be non-increasing. Ties never matter for code validity.
    int n = static_cast<int>(counts.size());
    HuffmanTree tree;
    if (n == 0)
        return tree;
    if (n == 1) {
        // degenerate tree: single leaf still needs one decision node so the
        // softmax has something to predict
        tree.codes = {{0}};
        tree.points = {{0}};
        tree.internal_nodes = 1;
        return tree;
    }
    std::vector<int64_t> count(2 * n - 1);
    std::vector<int> parent(2 * n - 1, 0);
    std::vector<uint8_t> branch(2 * n - 1, 0);
    for (int i = 0; i < n; ++i)
        count[i] = counts[i];

    int pos1 = n - 1;  // walks down the sorted leaves
    int pos2 = n;      // walks up the created internal nodes
    int next = n;
    for (int a = 0; a < n - 1; ++a) {
        int m1, m2;
        if (pos1 >= 0) {
            if (pos2 < next && count[pos2] < count[pos1])
                m1 = pos2++;
            else
                m1 = pos1--;
        } else
            m1 = pos2++;
        if (pos1 >= 0) {
            if (pos2 < next && count[pos2] < count[pos1])
                m2 = pos2++;
            else
                m2 = pos1--;
        } else
            m2 = pos2++;
        count[next] = count[m1] + count[m2];
        parent[m1] = next;
        parent[m2] = next;
        branch[m2] = 1;
        ++next;
    }
    tree.internal_nodes = n - 1;
    tree.codes.resize(n);
    tree.points.resize(n);
    for (int w = 0; w < n; ++w) {
        std::vector<uint8_t> code;
        std::vector<int> point;
        int node = w;
        while (node != 2 * n - 2) {
            code.push_back(branch[node]);
            node = parent[node];
            point.push_back(node - n); // internal node id in [0, n-1)
        }
        // stored leaf-to-root; the softmax walks root-to-leaf
        std::reverse(code.begin(), code.end());
        std::reverse(point.begin(), point.end());
        tree.codes[w] = std::move(code);
        tree.points[w] = std::move(point);
    }
    return tree;
}

} // namespace detail

namespace {

// xorshift64 with an affine seed scramble; the bit stream must be stable
// across runs and platforms.
struct Rng {
    uint64_t state;
    explicit Rng(uint64_t seed) : state(seed * 6364136223846793005ull + 1442695040888963407ull) {
        if (state == 0)
            state = 0x853c49e6748fea9bull;
    }
    uint64_t next() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    }
    double next_unit() { // [0,1)
        return static_cast<double>(next() >> 11) * (1.0 / 9007199254740992.0);
    }
    uint32_t next_below(uint32_t bound) { return static_cast<uint32_t>(next() % bound); }
};

struct Vocab {
    std::vector<std::string> words;
    std::vector<int64_t> counts;
    std::unordered_map<std::string, int> index;
};

Vocab build_vocab(const TokenSentences& corpus, int min_count) {
    std::map<std::string, int64_t> freq;
    for (const auto& sent : corpus)
        for (const auto& w : sent)
            ++freq[w];
    std::vector<std::pair<std::string, int64_t>> kept;
    for (auto& [w, c] : freq)
        if (c >= min_count)
            kept.emplace_back(w, c);
    std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second)
            return a.second > b.second;
        return a.first < b.first;
    });
    Vocab v;
    for (auto& [w, c] : kept) {
        v.index[w] = static_cast<int>(v.words.size());
        v.words.push_back(w);
        v.counts.push_back(c);
    }
    return v;
}

inline double sigmoid(double x) {
    return 1.0 / (1.0 + std::exp(-x));
}

// -log p of the Huffman branch decision, stable at large |f|.
inline double branch_loss(double f, uint8_t code) {
    // label = 1 - code; p(label=1) = sigmoid(f)
    double z = (code == 0) ? -f : f;
    if (z > 30.0)
        return z;
    return std::log1p(std::exp(z));
}

} // namespace

EmbeddingModel train(const TokenSentences& corpus, const TrainConfig& config) {
    if (corpus.empty())
        throw Error("training corpus is empty");
    Vocab vocab = build_vocab(corpus, config.min_count);
    const int n = static_cast<int>(vocab.words.size());
    if (n == 0)
        throw Error("vocabulary is empty after min_count filtering");
    const int dim = config.dim;

    auto tree = detail::build_huffman(vocab.counts);

    // Sentences as index lists, out-of-vocabulary tokens dropped.
    std::vector<std::vector<int>> encoded;
    encoded.reserve(corpus.size());
    int64_t corpus_tokens = 0;
    for (const auto& sent : corpus) {
        std::vector<int> e;
        for (const auto& w : sent) {
            auto it = vocab.index.find(w);
            if (it != vocab.index.end())
                e.push_back(it->second);
        }
        corpus_tokens += static_cast<int64_t>(e.size());
        encoded.push_back(std::move(e));
    }
    if (corpus_tokens == 0)
        throw Error("no in-vocabulary tokens in training corpus");

    std::vector<float> syn0(static_cast<size_t>(n) * dim);
    std::vector<float> syn1(static_cast<size_t>(tree.internal_nodes) * dim, 0.0f);
    {
        Rng rng(config.seed);
        for (auto& v : syn0)
            v = static_cast<float>((rng.next_unit() - 0.5) / dim);
    }

    const int reach = std::max(1, config.window - 1); // max positions between pair words
    const double lr0 = config.learning_rate;
    const int64_t total_words = corpus_tokens * config.epochs;
    std::vector<double> epoch_loss;

    const int workers =
#ifdef _OPENMP
        std::max(1, config.workers);
#else
        1;
#endif

    std::atomic<int64_t> words_done{0};
    std::vector<double> thread_loss(workers, 0.0);
    std::vector<int64_t> thread_pairs(workers, 0);

    auto train_range = [&](size_t begin, size_t end, Rng& rng, double& loss_sum,
                           int64_t& pair_count) {
        std::vector<double> hidden_err(dim);
        for (size_t si = begin; si < end; ++si) {
            const auto& sent = encoded[si];
            int len = static_cast<int>(sent.size());
            for (int pos = 0; pos < len; ++pos) {
                int64_t done = words_done.fetch_add(1, std::memory_order_relaxed);
                double progress = static_cast<double>(done) / static_cast<double>(total_words);
                double lr = lr0 * (1.0 - 0.9 * progress);
                int center = sent[pos];
                int shrink = static_cast<int>(rng.next_below(static_cast<uint32_t>(reach)));
                int span = reach - shrink;
                for (int off = -span; off <= span; ++off) {
                    if (off == 0)
                        continue;
                    int cpos = pos + off;
                    if (cpos < 0 || cpos >= len)
                        continue;
                    int context = sent[cpos];
                    float* v_in = syn0.data() + static_cast<size_t>(context) * dim;
                    std::fill(hidden_err.begin(), hidden_err.end(), 0.0);
                    const auto& code = tree.codes[center];
                    const auto& point = tree.points[center];
                    for (size_t d = 0; d < code.size(); ++d) {
                        float* v_out = syn1.data() + static_cast<size_t>(point[d]) * dim;
                        double f = 0.0;
                        for (int c = 0; c < dim; ++c)
                            f += static_cast<double>(v_in[c]) * v_out[c];
                        double g = (1.0 - code[d] - sigmoid(f)) * lr;
                        loss_sum += branch_loss(f, code[d]);
                        for (int c = 0; c < dim; ++c)
                            hidden_err[c] += g * v_out[c];
                        for (int c = 0; c < dim; ++c)
                            v_out[c] += static_cast<float>(g * v_in[c]);
                    }
                    for (int c = 0; c < dim; ++c)
                        v_in[c] += static_cast<float>(hidden_err[c]);
                    ++pair_count;
                }
            }
        }
    };

    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        std::fill(thread_loss.begin(), thread_loss.end(), 0.0);
        std::fill(thread_pairs.begin(), thread_pairs.end(), 0);
        if (workers == 1) {
            Rng rng(config.seed + 0x9e3779b97f4a7c15ull * (epoch + 1));
            train_range(0, encoded.size(), rng, thread_loss[0], thread_pairs[0]);
        } else {
#ifdef _OPENMP
#pragma omp parallel num_threads(workers)
            {
                int tid = omp_get_thread_num();
                int nt = omp_get_num_threads();
                size_t chunk = (encoded.size() + nt - 1) / nt;
                size_t begin = std::min(encoded.size(), chunk * tid);
                size_t end = std::min(encoded.size(), begin + chunk);
                Rng rng(config.seed + 0x9e3779b97f4a7c15ull * (epoch + 1) + tid);
                train_range(begin, end, rng, thread_loss[tid], thread_pairs[tid]);
            }
#endif
        }
        double loss = std::accumulate(thread_loss.begin(), thread_loss.end(), 0.0);
        int64_t pairs = std::accumulate(thread_pairs.begin(), thread_pairs.end(), int64_t{0});
        epoch_loss.push_back(pairs > 0 ? loss / static_cast<double>(pairs) : 0.0);
    }

    EmbeddingModel model;
    model.words = std::move(vocab.words);
    model.counts = std::move(vocab.counts);
    model.vocab = std::move(vocab.index);
    model.vectors = std::move(syn0);
    model.config = config;
    model.epoch_loss = std::move(epoch_loss);
    return model;
}

namespace {

int require_word(const EmbeddingModel& model, const std::string& w) {
    int idx = model.index_of(w);
    if (idx < 0)
        throw Error("word not in vocabulary: " + w);
    return idx;
}

double cosine(std::span<const double> a, std::span<const double> b) {
    double dot = 0, na = 0, nb = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na == 0.0 || nb == 0.0)
        return 0.0;
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

} // namespace

double cosine_similarity(const EmbeddingModel& model, const std::string& w1,
                         const std::string& w2) {
    auto a = model.vector_of(require_word(model, w1));
    auto b = model.vector_of(require_word(model, w2));
    double dot = 0, na = 0, nb = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        dot += static_cast<double>(a[i]) * b[i];
        na += static_cast<double>(a[i]) * a[i];
        nb += static_cast<double>(b[i]) * b[i];
    }
    if (na == 0.0 || nb == 0.0)
        return 0.0;
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

std::vector<double> community_centroid(const EmbeddingModel& model,
                                       const std::set<std::string>& community) {
    std::vector<double> centroid(model.config.dim, 0.0);
    int found = 0;
    for (const auto& w : community) {
        int idx = model.index_of(w);
        if (idx < 0)
            continue;
        auto v = model.vector_of(idx);
        for (int c = 0; c < model.config.dim; ++c)
            centroid[c] += v[c];
        ++found;
    }
    if (found == 0)
        throw Error("community has no in-vocabulary words");
    for (auto& c : centroid)
        c /= found;
    return centroid;
}

bool mean_vector(const EmbeddingModel& model, std::span<const std::string> tokens,
                 std::vector<double>& out) {
    out.assign(model.config.dim, 0.0);
    int found = 0;
    for (const auto& t : tokens) {
        int idx = model.index_of(t);
        if (idx < 0)
            continue;
        auto v = model.vector_of(idx);
        for (int c = 0; c < model.config.dim; ++c)
            out[c] += v[c];
        ++found;
    }
    if (found == 0)
        return false;
    for (auto& c : out)
        c /= found;
    return true;
}

double community_score(const EmbeddingModel& model, std::span<const std::string> tokens,
                       const std::set<std::string>& community) {
    auto centroid = community_centroid(model, community);
    std::vector<double> doc_vec;
    if (!mean_vector(model, tokens, doc_vec))
        return 0.0;
    return 100.0 * std::max(0.0, cosine(doc_vec, centroid));
}

void save_model(const EmbeddingModel& model, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw Error("cannot write model file: " + path);
    out << "uop-embeddings 1\n";
    out << model.size() << ' ' << model.config.dim << ' ' << model.config.window << ' '
        << model.config.min_count << ' ' << model.config.epochs << ' '
        << format_double(model.config.learning_rate) << ' ' << model.config.seed << '\n';
    char buf[64];
    for (size_t i = 0; i < model.size(); ++i) {
        out << model.words[i] << ' ' << model.counts[i];
        auto v = model.vector_of(static_cast<int>(i));
        for (float x : v) {
            auto res = std::to_chars(buf, buf + sizeof(buf), x);
            out << ' ';
            out.write(buf, res.ptr - buf);
        }
        out << '\n';
    }
}

EmbeddingModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open model file: " + path);
    std::string magic;
    int version = 0;
    in >> magic >> version;
    if (magic != "uop-embeddings" || version != 1)
        throw Error("not a model file: " + path);
    EmbeddingModel model;
    size_t n = 0;
    in >> n >> model.config.dim >> model.config.window >> model.config.min_count >>
        model.config.epochs >> model.config.learning_rate >> model.config.seed;
    if (!in || model.config.dim <= 0)
        throw Error("corrupt model header: " + path);
    model.words.resize(n);
    model.counts.resize(n);
    model.vectors.resize(n * static_cast<size_t>(model.config.dim));
    for (size_t i = 0; i < n; ++i) {
        in >> model.words[i] >> model.counts[i];
        for (int c = 0; c < model.config.dim; ++c)
            in >> model.vectors[i * model.config.dim + c];
        if (!in)
            throw Error("model row " + std::to_string(i) + " truncated or dimension mismatch");
        model.vocab[model.words[i]] = static_cast<int>(i);
    }
    std::string extra;
    if (in >> extra)
        throw Error("model file has trailing data (dimension mismatch?): " + path);
    return model;
}

} // namespace uop
