#include "uop/dictionary.hpp"

#include "uop/error.hpp"
#include "uop/kernels.hpp"
#include "uop/porter.hpp"
#include "uop/sentiment.hpp"
#include "uop/util.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>

namespace uop {

int WordGraph::index_of(const std::string& w) const {
    auto it = std::lower_bound(vertices.begin(), vertices.end(), w);
    if (it == vertices.end() || *it != w)
        return -1;
    return static_cast<int>(it - vertices.begin());
}

double pair_score(const EmbeddingModel& model, const LexiconBundle& lex, const std::string& w1,
                  const std::string& w2, double alpha) {
    double vec_sim = cosine_similarity(model, w1, w2);
    double sent_sim = polarity_product(lex, w1, w2);
    return blend_similarity(vec_sim, sent_sim, alpha);
}

GraphBuild build_graph(const std::set<std::string>& words, const EmbeddingModel& model,
                       const LexiconBundle& lex, double alpha, size_t min_vertices) {
    GraphBuild out;
    for (const auto& w : words) {
        if (model.index_of(w) >= 0)
            out.graph.vertices.push_back(w); // set iteration is already sorted
        else
            out.dropped.push_back(w);
    }
    size_t n = out.graph.vertices.size();
    if (n < min_vertices)
        throw Error("only " + std::to_string(n) + " qualifier words are in the vocabulary, need " +
                    std::to_string(min_vertices));

    // gather rows once, then run the pairwise kernel
    std::vector<float> vectors(n * static_cast<size_t>(model.config.dim));
    std::vector<double> pols(n);
    for (size_t i = 0; i < n; ++i) {
        auto row = model.vector_of(model.index_of(out.graph.vertices[i]));
        std::copy(row.begin(), row.end(), vectors.begin() + i * model.config.dim);
        pols[i] = polarity(lex, out.graph.vertices[i]);
    }
    auto weights = kernels::pairwise_weights_parallel(vectors, model.config.dim, pols, alpha);

    out.graph.edges.reserve(weights.size());
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            out.graph.edges.push_back({static_cast<int>(i), static_cast<int>(j),
                                       weights[kernels::pair_index(i, j, n)]});
    return out;
}

namespace {

std::vector<double> all_thresholds(const WordGraph& graph, double beta) {
    size_t n = graph.vertices.size();
    if (n < 3)
        throw Error("vertex threshold needs at least 3 vertices");
    std::vector<std::vector<double>> incident(n);
    for (const auto& e : graph.edges) {
        incident[e.u].push_back(e.weight);
        incident[e.v].push_back(e.weight);
    }
    std::vector<double> thresh(n);
    double denom_mean = static_cast<double>(n) - 1.0;
    double denom_var = static_cast<double>(n) - 2.0;
    for (size_t u = 0; u < n; ++u) {
        double mean = std::accumulate(incident[u].begin(), incident[u].end(), 0.0) / denom_mean;
        double ss = 0.0;
        for (double w : incident[u])
            ss += (w - mean) * (w - mean);
        thresh[u] = mean + beta * std::sqrt(ss / denom_var);
    }
    return thresh;
}

} // namespace

double vertex_threshold(const WordGraph& graph, int u, double beta) {
    return all_thresholds(graph, beta)[static_cast<size_t>(u)];
}

WordGraph prune(const WordGraph& graph, double beta, PruneRule rule) {
    auto thresh = all_thresholds(graph, beta);
    std::vector<bool> keep_vertex(graph.vertices.size(), false);
    std::vector<WordGraph::Edge> kept;
    for (const auto& e : graph.edges) {
        bool above_u = e.weight > thresh[e.u];
        bool above_v = e.weight > thresh[e.v];
        bool survives =
            rule == PruneRule::both_endpoints ? (above_u && above_v) : (above_u || above_v);
        if (survives) {
            kept.push_back(e);
            keep_vertex[e.u] = true;
            keep_vertex[e.v] = true;
        }
    }
    WordGraph out;
    std::vector<int> remap(graph.vertices.size(), -1);
    for (size_t i = 0; i < graph.vertices.size(); ++i) {
        if (keep_vertex[i]) {
            remap[i] = static_cast<int>(out.vertices.size());
            out.vertices.push_back(graph.vertices[i]);
        }
    }
    for (auto e : kept) {
        e.u = remap[e.u];
        e.v = remap[e.v];
        out.edges.push_back(e);
    }
    return out;
}

namespace {

// Fixed-width bitset sized at runtime; plenty for dictionary-scale graphs.
struct Bits {
    std::vector<uint64_t> w;
    explicit Bits(size_t n = 0) : w((n + 63) / 64, 0) {}
    void set(size_t i) { w[i >> 6] |= uint64_t{1} << (i & 63); }
    void reset(size_t i) { w[i >> 6] &= ~(uint64_t{1} << (i & 63)); }
    bool test(size_t i) const { return (w[i >> 6] >> (i & 63)) & 1; }
    bool empty() const {
        for (auto x : w)
            if (x)
                return false;
        return true;
    }
    size_t count() const {
        size_t c = 0;
        for (auto x : w)
            c += static_cast<size_t>(__builtin_popcountll(x));
        return c;
    }
    Bits and_with(const Bits& o) const {
        Bits r;
        r.w.resize(w.size());
        for (size_t i = 0; i < w.size(); ++i)
            r.w[i] = w[i] & o.w[i];
        return r;
    }
    size_t intersect_count(const Bits& o) const {
        size_t c = 0;
        for (size_t i = 0; i < w.size(); ++i)
            c += static_cast<size_t>(__builtin_popcountll(w[i] & o.w[i]));
        return c;
    }
    int first() const {
        for (size_t i = 0; i < w.size(); ++i)
            if (w[i])
                return static_cast<int>(i * 64 + static_cast<size_t>(__builtin_ctzll(w[i])));
        return -1;
    }
    template <typename F> void for_each(F f) const {
        for (size_t i = 0; i < w.size(); ++i) {
            uint64_t x = w[i];
            while (x) {
                int b = __builtin_ctzll(x);
                f(static_cast<int>(i * 64 + b));
                x &= x - 1;
            }
        }
    }
};

// Bron-Kerbosch with pivoting; collects all maximal cliques.
void bron_kerbosch(const std::vector<Bits>& adj, Bits R, Bits P, Bits X,
                   std::vector<std::vector<int>>& cliques) {
    if (P.empty() && X.empty()) {
        std::vector<int> clique;
        R.for_each([&](int v) { clique.push_back(v); });
        cliques.push_back(std::move(clique));
        return;
    }
    // pivot: vertex of P union X with most neighbours in P
    int pivot = -1;
    size_t best = 0;
    auto consider = [&](int v) {
        size_t c = P.intersect_count(adj[v]);
        if (pivot < 0 || c > best) {
            pivot = v;
            best = c;
        }
    };
    P.for_each(consider);
    X.for_each(consider);

    std::vector<int> candidates;
    P.for_each([&](int v) {
        if (!adj[pivot].test(v))
            candidates.push_back(v);
    });
    for (int v : candidates) {
        Bits R2 = R;
        R2.set(v);
        bron_kerbosch(adj, std::move(R2), P.and_with(adj[v]), X.and_with(adj[v]), cliques);
        P.reset(v);
        X.set(v);
    }
}

struct DisjointSet {
    std::vector<int> parent;
    explicit DisjointSet(size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

} // namespace

std::vector<std::vector<std::string>> k_clique_communities(const WordGraph& graph, int k) {
    if (k < 2)
        throw Error("clique size must be >= 2");
    size_t n = graph.vertices.size();
    if (n == 0)
        return {};
    std::vector<Bits> adj(n, Bits(n));
    for (const auto& e : graph.edges) {
        adj[e.u].set(e.v);
        adj[e.v].set(e.u);
    }
    Bits P(n);
    for (size_t i = 0; i < n; ++i)
        P.set(i);
    std::vector<std::vector<int>> maximal;
    bron_kerbosch(adj, Bits(n), std::move(P), Bits(n), maximal);

    // Percolation over maximal cliques of size >= k: two cliques belong to
    // the same community when they share at least k-1 vertices.
    std::vector<std::vector<int>> big;
    for (auto& c : maximal)
        if (static_cast<int>(c.size()) >= k)
            big.push_back(std::move(c));
    if (big.empty())
        return {};
    std::vector<Bits> clique_bits;
    clique_bits.reserve(big.size());
    for (const auto& c : big) {
        Bits b(n);
        for (int v : c)
            b.set(v);
        clique_bits.push_back(std::move(b));
    }
    DisjointSet ds(big.size());
    for (size_t a = 0; a < big.size(); ++a)
        for (size_t b = a + 1; b < big.size(); ++b)
            if (clique_bits[a].intersect_count(clique_bits[b]) >= static_cast<size_t>(k - 1))
                ds.unite(static_cast<int>(a), static_cast<int>(b));

    std::map<int, Bits> groups;
    for (size_t a = 0; a < big.size(); ++a) {
        auto [it, fresh] = groups.try_emplace(ds.find(static_cast<int>(a)), Bits(n));
        for (size_t i = 0; i < it->second.w.size(); ++i)
            it->second.w[i] |= clique_bits[a].w[i];
        (void)fresh;
    }
    std::vector<std::vector<std::string>> out;
    for (auto& [root, bits] : groups) {
        std::vector<std::string> members;
        bits.for_each([&](int v) { members.push_back(graph.vertices[v]); });
        std::sort(members.begin(), members.end());
        out.push_back(std::move(members));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size())
            return a.size() > b.size();
        return a < b;
    });
    return out;
}

UopDictionary assemble_dictionary(const std::vector<std::vector<std::string>>& communities,
                                  const LexiconBundle& lex, const EmbeddingModel& model,
                                  double alpha, double beta, int clique_size,
                                  const std::map<std::string, std::string>& label_overrides,
                                  std::vector<std::string>* notes) {
    if (communities.empty())
        throw Error("no communities to assemble");
    auto note = [&](const std::string& msg) {
        if (notes)
            notes->push_back(msg);
    };

    std::map<std::string, int> membership_count;
    for (const auto& c : communities)
        for (const auto& w : c)
            ++membership_count[w];

    UopDictionary dict;
    dict.alpha = alpha;
    dict.beta = beta;
    dict.clique_size = clique_size;

    std::set<std::string> used_labels;
    for (const auto& c : communities) {
        Community com;
        com.members = c;
        std::sort(com.members.begin(), com.members.end());

        double pol_sum = 0.0;
        for (const auto& w : com.members) {
            pol_sum += polarity(lex, w);
            if (membership_count[w] > 1)
                com.overlap_words.push_back(w);
        }
        com.polarity = (pol_sum / static_cast<double>(com.members.size()) >= 0.0)
                           ? Polarity::positive
                           : Polarity::negative;

        for (const auto& w : com.members)
            com.stems.push_back(porter_stem(w));
        std::sort(com.stems.begin(), com.stems.end());
        com.stems.erase(std::unique(com.stems.begin(), com.stems.end()), com.stems.end());

        // label: non-overlapped member with the highest total similarity to
        // the rest of its community
        auto total_score = [&](const std::string& w) {
            double s = 0.0;
            for (const auto& other : com.members)
                if (other != w)
                    s += pair_score(model, lex, w, other, alpha);
            return s;
        };
        std::string best;
        double best_score = 0.0;
        for (const auto& w : com.members) {
            if (membership_count[w] > 1)
                continue;
            double s = total_score(w);
            if (best.empty() || s > best_score) {
                best = w;
                best_score = s;
            }
        }
        if (best.empty()) {
            // every member overlaps; fall back to the overall best
            for (const auto& w : com.members) {
                double s = total_score(w);
                if (best.empty() || s > best_score) {
                    best = w;
                    best_score = s;
                }
            }
            note("community {" + com.members.front() + ",...}: all members overlap, label '" +
                 best + "' taken from overlapped words");
        }
        com.label = best;

        for (const auto& w : com.members) {
            auto it = label_overrides.find(w);
            if (it != label_overrides.end()) {
                com.label = it->second;
                break;
            }
        }

        if (!used_labels.insert(com.label).second) {
            std::string base = com.label;
            int suffix = 2;
            while (!used_labels.insert(base + "_" + std::to_string(suffix)).second)
                ++suffix;
            com.label = base + "_" + std::to_string(suffix);
            note("duplicate label '" + base + "' renamed to '" + com.label + "'");
        }
        dict.communities.push_back(std::move(com));
    }
    dict.rebuild_stem_index();
    return dict;
}

void UopDictionary::rebuild_stem_index() {
    stem_index_.clear();
    for (size_t i = 0; i < communities.size(); ++i)
        for (const auto& s : communities[i].stems)
            stem_index_[s].push_back(static_cast<int>(i));
}

const std::unordered_map<std::string, std::vector<int>>& UopDictionary::stem_index() const {
    return stem_index_;
}

std::vector<std::string> UopDictionary::match_stems(std::span<const std::string> stems) const {
    std::set<int> hit;
    for (const auto& s : stems) {
        auto it = stem_index_.find(s);
        if (it != stem_index_.end())
            hit.insert(it->second.begin(), it->second.end());
    }
    std::vector<std::string> labels;
    for (int i : hit)
        labels.push_back(communities[static_cast<size_t>(i)].label);
    std::sort(labels.begin(), labels.end());
    return labels;
}

void save_dictionary(const UopDictionary& dict, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw Error("cannot write dictionary file: " + path);
    out << "uop-dictionary 1\n";
    out << "alpha " << format_double(dict.alpha) << '\n';
    out << "beta " << format_double(dict.beta) << '\n';
    out << "k " << dict.clique_size << '\n';
    out << "communities " << dict.communities.size() << '\n';
    for (const auto& c : dict.communities) {
        out << "community " << c.label << ' '
            << (c.polarity == Polarity::positive ? "positive" : "negative") << ' '
            << c.members.size() << '\n';
        std::set<std::string> overlap(c.overlap_words.begin(), c.overlap_words.end());
        for (const auto& m : c.members)
            out << m << ' ' << porter_stem(m) << ' ' << (overlap.contains(m) ? 1 : 0) << '\n';
    }
}

UopDictionary load_dictionary(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open dictionary file: " + path);
    std::string magic;
    int version = 0;
    in >> magic >> version;
    if (magic != "uop-dictionary" || version != 1)
        throw Error("not a dictionary file: " + path);
    UopDictionary dict;
    std::string key;
    size_t n_comm = 0;
    in >> key >> dict.alpha;
    if (key != "alpha")
        throw Error("corrupt dictionary header: " + path);
    in >> key >> dict.beta;
    if (key != "beta")
        throw Error("corrupt dictionary header: " + path);
    in >> key >> dict.clique_size;
    if (key != "k")
        throw Error("corrupt dictionary header: " + path);
    in >> key >> n_comm;
    if (key != "communities" || !in)
        throw Error("corrupt dictionary header: " + path);
    std::set<std::string> seen_labels;
    for (size_t i = 0; i < n_comm; ++i) {
        Community c;
        std::string pol;
        size_t n_members = 0;
        in >> key >> c.label >> pol >> n_members;
        if (key != "community" || (pol != "positive" && pol != "negative") || !in)
            throw Error("corrupt community header in: " + path);
        if (!seen_labels.insert(c.label).second)
            throw Error("duplicate community label '" + c.label + "' in: " + path);
        c.polarity = pol == "positive" ? Polarity::positive : Polarity::negative;
        for (size_t m = 0; m < n_members; ++m) {
            std::string word, stem_str;
            int overlap = 0;
            in >> word >> stem_str >> overlap;
            if (!in)
                throw Error("corrupt member row in: " + path);
            c.members.push_back(word);
            c.stems.push_back(stem_str);
            if (overlap)
                c.overlap_words.push_back(word);
        }
        std::sort(c.stems.begin(), c.stems.end());
        c.stems.erase(std::unique(c.stems.begin(), c.stems.end()), c.stems.end());
        dict.communities.push_back(std::move(c));
    }
    dict.rebuild_stem_index();
    return dict;
}

} // namespace uop
