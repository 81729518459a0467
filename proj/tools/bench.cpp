// Compares the serial reference kernels against their OpenMP variants and
// single-worker training against hogwild. Sizes default to dictionary-scale
// inputs; pass a scale factor to grow them.

#include "uop/embeddings.hpp"
#include "uop/kernels.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace uop;

namespace {

double now_s() {
    using namespace std::chrono;
    return duration<double>(steady_clock::now().time_since_epoch()).count();
}

template <typename F> double time_best_of(int reps, F f) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        double t0 = now_s();
        f();
        best = std::min(best, now_s() - t0);
    }
    return best;
}

void report(const char* name, double serial_s, double parallel_s, bool identical) {
    std::printf("%-24s serial %8.3f ms   parallel %8.3f ms   speedup %5.2fx   %s\n", name,
                serial_s * 1e3, parallel_s * 1e3, serial_s / parallel_s,
                identical ? "bit-identical" : "DIFFERS");
}

} // namespace

int main(int argc, char** argv) {
    double scale = argc > 1 ? std::atof(argv[1]) : 1.0;
#ifdef _OPENMP
    std::printf("openmp max threads: %d\n", omp_get_max_threads());
#else
    std::printf("openmp not enabled\n");
#endif

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);

    {
        size_t n = static_cast<size_t>(300 * scale);
        int dim = 128;
        std::vector<float> vectors(n * dim);
        std::vector<double> pols(n);
        for (auto& v : vectors)
            v = static_cast<float>(unit(rng));
        for (auto& p : pols)
            p = unit(rng);
        std::vector<double> a, b;
        double ts = time_best_of(3, [&] { a = kernels::pairwise_weights_serial(vectors, dim, pols, 0.8); });
        double tp = time_best_of(3, [&] { b = kernels::pairwise_weights_parallel(vectors, dim, pols, 0.8); });
        report("pairwise_weights", ts, tp, a == b);
    }

    {
        size_t n = static_cast<size_t>(2000 * scale);
        std::vector<double> lats(n), lons(n);
        for (size_t i = 0; i < n; ++i) {
            lats[i] = 41.8 + 0.2 * unit(rng);
            lons[i] = -87.6 + 0.2 * unit(rng);
        }
        std::vector<double> a, b;
        double ts = time_best_of(3, [&] { a = kernels::core_distances_serial(lats, lons, 5); });
        double tp = time_best_of(3, [&] { b = kernels::core_distances_parallel(lats, lons, 5); });
        report("core_distances", ts, tp, a == b);
    }

    {
        size_t docs = static_cast<size_t>(20000 * scale);
        int dim = 64;
        int n_comm = 8;
        std::vector<std::vector<double>> means(docs), centroids(n_comm);
        std::vector<std::vector<int>> doc_comm(docs);
        for (auto& c : centroids) {
            c.resize(dim);
            for (auto& x : c)
                x = unit(rng);
        }
        for (size_t i = 0; i < docs; ++i) {
            means[i].resize(dim);
            for (auto& x : means[i])
                x = unit(rng);
            doc_comm[i] = {static_cast<int>(i % n_comm), static_cast<int>((i + 3) % n_comm)};
        }
        std::vector<double> a, b;
        double ts = time_best_of(3, [&] { a = kernels::semantic_scores_serial(means, doc_comm, centroids); });
        double tp = time_best_of(3, [&] { b = kernels::semantic_scores_parallel(means, doc_comm, centroids); });
        report("semantic_scores", ts, tp, a == b);
    }

    {
        // small planted corpus; hogwild output is run-dependent, so only
        // the timing is compared
        std::vector<std::string> words;
        for (int i = 0; i < 50; ++i)
            words.push_back("w" + std::to_string(i));
        TokenSentences corpus;
        std::uniform_int_distribution<int> pick(0, 49);
        for (int s = 0; s < static_cast<int>(3000 * scale); ++s) {
            std::vector<std::string> sent;
            for (int t = 0; t < 8; ++t)
                sent.push_back(words[static_cast<size_t>(pick(rng))]);
            corpus.push_back(std::move(sent));
        }
        TrainConfig tc;
        tc.window = 5;
        tc.min_count = 1;
        tc.dim = 64;
        tc.epochs = 2;
        tc.seed = 11;
        tc.workers = 1;
        double ts = time_best_of(1, [&] { train(corpus, tc); });
#ifdef _OPENMP
        tc.workers = omp_get_max_threads();
#endif
        double tp = time_best_of(1, [&] { train(corpus, tc); });
        std::printf("%-24s serial %8.3f ms   %d-worker %8.3f ms   speedup %5.2fx   (hogwild)\n",
                    "skipgram_train", ts * 1e3, tc.workers, tp * 1e3, ts / tp);
    }

    return 0;
}
