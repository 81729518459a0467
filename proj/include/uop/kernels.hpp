#ifndef UOP_KERNELS_HPP
#define UOP_KERNELS_HPP

#include <span>
#include <vector>

namespace uop::kernels {

// Data-parallel inner loops. Each kernel ships in two variants: a serial
// reference and an OpenMP version. Every output element is written by
// exactly one iteration with identical arithmetic, so the variants are
// bit-identical for any thread count; tests assert that.

// Upper-triangle index of pair (i, j), i < j, over n items.
inline size_t pair_index(size_t i, size_t j, size_t n) {
    return i * n - i * (i + 1) / 2 + (j - i - 1);
}

// Blended pair similarity for all word pairs: alpha * cosine + (1 - alpha) *
// polarity product. vectors is n x dim row-major; result is the flat upper
// triangle of size n (n - 1) / 2.
std::vector<double> pairwise_weights_serial(std::span<const float> vectors, int dim,
                                            std::span<const double> polarity, double alpha);
std::vector<double> pairwise_weights_parallel(std::span<const float> vectors, int dim,
                                              std::span<const double> polarity, double alpha);

// Haversine distance to the (k-1)-th nearest other point (the point itself
// counts as rank 0), per point.
std::vector<double> core_distances_serial(std::span<const double> lats,
                                          std::span<const double> lons, int k);
std::vector<double> core_distances_parallel(std::span<const double> lats,
                                            std::span<const double> lons, int k);

// Per-document semantic score: 100 * max(0, max over the document's
// communities of cosine(doc_mean, centroid)). An empty doc_mean means no
// in-vocabulary tokens and scores 0.
std::vector<double> semantic_scores_serial(const std::vector<std::vector<double>>& doc_means,
                                           const std::vector<std::vector<int>>& doc_communities,
                                           const std::vector<std::vector<double>>& centroids);
std::vector<double> semantic_scores_parallel(const std::vector<std::vector<double>>& doc_means,
                                             const std::vector<std::vector<int>>& doc_communities,
                                             const std::vector<std::vector<double>>& centroids);

} // namespace uop::kernels

#endif
