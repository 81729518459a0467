#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "uop/embeddings.hpp"
#include "uop/kernels.hpp"

#include <random>

using namespace uop;

namespace {

std::mt19937_64 rng(20240);

double unit() {
    return std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
}

} // namespace

TEST_CASE("pair_index walks the upper triangle") {
    size_t n = 5;
    size_t expect = 0;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            CHECK(kernels::pair_index(i, j, n) == expect++);
    CHECK(expect == n * (n - 1) / 2);
}

TEST_CASE("pairwise weights: parallel equals serial bitwise") {
    for (int iter = 0; iter < 5; ++iter) {
        size_t n = 20 + rng() % 60;
        int dim = 8 + static_cast<int>(rng() % 48);
        std::vector<float> vectors(n * dim);
        std::vector<double> pols(n);
        for (auto& v : vectors)
            v = static_cast<float>(unit());
        for (auto& p : pols)
            p = unit();
        double alpha = std::uniform_real_distribution<double>(0, 1)(rng);
        auto serial = kernels::pairwise_weights_serial(vectors, dim, pols, alpha);
        auto parallel = kernels::pairwise_weights_parallel(vectors, dim, pols, alpha);
        CHECK(serial == parallel);
        CHECK(serial.size() == n * (n - 1) / 2);
    }
}

TEST_CASE("core distances: parallel equals serial bitwise") {
    for (int iter = 0; iter < 5; ++iter) {
        size_t n = 30 + rng() % 100;
        std::vector<double> lats(n), lons(n);
        for (size_t i = 0; i < n; ++i) {
            lats[i] = 41.8 + 0.1 * unit();
            lons[i] = -87.6 + 0.1 * unit();
        }
        int k = 2 + static_cast<int>(rng() % 6);
        auto serial = kernels::core_distances_serial(lats, lons, k);
        auto parallel = kernels::core_distances_parallel(lats, lons, k);
        CHECK(serial == parallel);
    }
}

TEST_CASE("core distance is the distance to the (k-1)th nearest other point") {
    // four points on a line, ~111 m apart
    std::vector<double> lats = {41.900, 41.901, 41.902, 41.903};
    std::vector<double> lons(4, -87.6);
    // k counts the point itself: k=2 is the nearest-neighbour distance
    auto core2 = kernels::core_distances_serial(lats, lons, 2);
    CHECK(core2[0] == doctest::Approx(111.2).epsilon(0.01));
    auto core3 = kernels::core_distances_serial(lats, lons, 3);
    CHECK(core3[0] == doctest::Approx(222.4).epsilon(0.01));
    auto core4 = kernels::core_distances_serial(lats, lons, 4);
    CHECK(core4[0] == doctest::Approx(333.6).epsilon(0.01));
    auto core1 = kernels::core_distances_serial(lats, lons, 1);
    CHECK(core1[0] == 0.0);
}

TEST_CASE("semantic scores: parallel equals serial bitwise") {
    for (int iter = 0; iter < 5; ++iter) {
        size_t docs = 50 + rng() % 200;
        int dim = 16;
        int n_comm = 4;
        std::vector<std::vector<double>> means(docs), centroids(n_comm);
        std::vector<std::vector<int>> doc_comm(docs);
        for (auto& c : centroids) {
            c.resize(dim);
            for (auto& x : c)
                x = unit();
        }
        for (size_t i = 0; i < docs; ++i) {
            if (rng() % 10 == 0) {
                // empty mean: no in-vocabulary tokens
            } else {
                means[i].resize(dim);
                for (auto& x : means[i])
                    x = unit();
            }
            doc_comm[i].push_back(static_cast<int>(rng() % n_comm));
            if (rng() % 2)
                doc_comm[i].push_back(static_cast<int>(rng() % n_comm));
        }
        auto serial = kernels::semantic_scores_serial(means, doc_comm, centroids);
        auto parallel = kernels::semantic_scores_parallel(means, doc_comm, centroids);
        CHECK(serial == parallel);
        for (size_t i = 0; i < docs; ++i) {
            CHECK(serial[i] >= 0.0);
            CHECK(serial[i] <= 100.0 + 1e-9);
            if (means[i].empty())
                CHECK(serial[i] == 0.0);
        }
    }
}

TEST_CASE("semantic kernel agrees with community_score") {
    EmbeddingModel m;
    m.words = {"aa", "bb", "cc"};
    m.config.dim = 3;
    std::vector<std::vector<float>> vecs = {{1, 0, 0}, {0.5f, 0.5f, 0}, {0, 0, 1}};
    for (size_t i = 0; i < m.words.size(); ++i) {
        m.vocab[m.words[i]] = static_cast<int>(i);
        m.counts.push_back(5);
        m.vectors.insert(m.vectors.end(), vecs[i].begin(), vecs[i].end());
    }
    std::vector<std::string> tokens = {"aa", "bb"};
    std::set<std::string> community = {"aa", "cc"};
    double direct = community_score(m, tokens, community);

    std::vector<double> mean;
    REQUIRE(mean_vector(m, tokens, mean));
    auto centroid = community_centroid(m, community);
    auto scores = kernels::semantic_scores_serial({mean}, {{0}}, {centroid});
    CHECK(scores[0] == direct);
}

TEST_CASE("single-worker training equals the explicit serial path") {
    TokenSentences corpus;
    std::vector<std::string> words = {"red", "blue", "green", "gold"};
    for (int i = 0; i < 200; ++i) {
        std::vector<std::string> s;
        for (int t = 0; t < 4; ++t)
            s.push_back(words[rng() % words.size()]);
        corpus.push_back(std::move(s));
    }
    TrainConfig tc;
    tc.window = 3;
    tc.min_count = 1;
    tc.dim = 16;
    tc.epochs = 3;
    tc.seed = 99;
    tc.workers = 1;
    auto serial = train(corpus, tc);
    auto again = train(corpus, tc);
    CHECK(serial.vectors == again.vectors);
    CHECK(serial.epoch_loss == again.epoch_loss);
}
