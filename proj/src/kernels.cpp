#include "uop/kernels.hpp"

#include "uop/geo.hpp"

#include <algorithm>
#include <cmath>

namespace uop::kernels {

namespace {

double blended_pair(std::span<const float> vectors, int dim, std::span<const double> polarity,
                    double alpha, size_t i, size_t j) {
    const float* a = vectors.data() + i * dim;
    const float* b = vectors.data() + j * dim;
    double dot = 0, na = 0, nb = 0;
    for (int c = 0; c < dim; ++c) {
        dot += static_cast<double>(a[c]) * b[c];
        na += static_cast<double>(a[c]) * a[c];
        nb += static_cast<double>(b[c]) * b[c];
    }
    double cos = (na == 0.0 || nb == 0.0) ? 0.0 : dot / (std::sqrt(na) * std::sqrt(nb));
    return alpha * cos + (1.0 - alpha) * (polarity[i] * polarity[j]);
}

double kth_neighbor_distance(std::span<const double> lats, std::span<const double> lons, int k,
                             size_t i, std::vector<double>& scratch) {
    size_t n = lats.size();
    scratch.clear();
    for (size_t j = 0; j < n; ++j) {
        if (j == i)
            continue;
        scratch.push_back(haversine_m(lats[i], lons[i], lats[j], lons[j]));
    }
    size_t rank = static_cast<size_t>(k - 1); // k counts the point itself
    if (rank == 0)
        return 0.0;
    if (rank > scratch.size())
        rank = scratch.size();
    std::nth_element(scratch.begin(), scratch.begin() + (rank - 1), scratch.end());
    return scratch[rank - 1];
}

double doc_score(const std::vector<double>& mean, const std::vector<int>& communities,
                 const std::vector<std::vector<double>>& centroids) {
    if (mean.empty())
        return 0.0;
    double best = 0.0;
    for (int ci : communities) {
        const auto& cen = centroids[ci];
        double dot = 0, na = 0, nb = 0;
        for (size_t c = 0; c < mean.size(); ++c) {
            dot += mean[c] * cen[c];
            na += mean[c] * mean[c];
            nb += cen[c] * cen[c];
        }
        double cos = (na == 0.0 || nb == 0.0) ? 0.0 : dot / (std::sqrt(na) * std::sqrt(nb));
        best = std::max(best, cos);
    }
    return 100.0 * std::max(0.0, best);
}

} // namespace

std::vector<double> pairwise_weights_serial(std::span<const float> vectors, int dim,
                                            std::span<const double> polarity, double alpha) {
    size_t n = polarity.size();
    std::vector<double> out(n * (n - 1) / 2);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            out[pair_index(i, j, n)] = blended_pair(vectors, dim, polarity, alpha, i, j);
    return out;
}

std::vector<double> pairwise_weights_parallel(std::span<const float> vectors, int dim,
                                              std::span<const double> polarity, double alpha) {
    size_t n = polarity.size();
    std::vector<double> out(n * (n - 1) / 2);
#pragma omp parallel for schedule(dynamic, 1)
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            out[pair_index(i, j, n)] = blended_pair(vectors, dim, polarity, alpha, i, j);
    return out;
}

std::vector<double> core_distances_serial(std::span<const double> lats,
                                          std::span<const double> lons, int k) {
    size_t n = lats.size();
    std::vector<double> out(n);
    std::vector<double> scratch;
    for (size_t i = 0; i < n; ++i)
        out[i] = kth_neighbor_distance(lats, lons, k, i, scratch);
    return out;
}

std::vector<double> core_distances_parallel(std::span<const double> lats,
                                            std::span<const double> lons, int k) {
    size_t n = lats.size();
    std::vector<double> out(n);
#pragma omp parallel
    {
        std::vector<double> scratch;
#pragma omp for schedule(dynamic, 16)
        for (size_t i = 0; i < n; ++i)
            out[i] = kth_neighbor_distance(lats, lons, k, i, scratch);
    }
    return out;
}

std::vector<double> semantic_scores_serial(const std::vector<std::vector<double>>& doc_means,
                                           const std::vector<std::vector<int>>& doc_communities,
                                           const std::vector<std::vector<double>>& centroids) {
    std::vector<double> out(doc_means.size());
    for (size_t i = 0; i < doc_means.size(); ++i)
        out[i] = doc_score(doc_means[i], doc_communities[i], centroids);
    return out;
}

std::vector<double> semantic_scores_parallel(const std::vector<std::vector<double>>& doc_means,
                                             const std::vector<std::vector<int>>& doc_communities,
                                             const std::vector<std::vector<double>>& centroids) {
    std::vector<double> out(doc_means.size());
#pragma omp parallel for schedule(static)
    for (size_t i = 0; i < doc_means.size(); ++i)
        out[i] = doc_score(doc_means[i], doc_communities[i], centroids);
    return out;
}

} // namespace uop::kernels
