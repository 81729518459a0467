#ifndef UOP_EXTRACT_HPP
#define UOP_EXTRACT_HPP

#include "uop/config.hpp"
#include "uop/dictionary.hpp"
#include "uop/embeddings.hpp"
#include "uop/preprocess.hpp"
#include "uop/util.hpp"

#include <map>
#include <string>
#include <vector>

namespace uop {

struct LabeledDocument {
    Document doc;
    std::vector<std::string> labels; // sorted, nonempty past the labeling stage
    double semantic_score = 0.0;
};

struct PerceptionCluster {
    int id = 0;
    YearMonth month;
    std::vector<LabeledDocument> members;
    GeoPoint centroid; // spherical mean of member coordinates
};

struct StageReport {
    size_t total = 0;          // documents in
    size_t after_spatial = 0;  // past the coincident-location filter
    size_t matched = 0;        // carrying at least one dictionary label
    size_t after_semantic = 0; // past the semantic score cut
    std::map<YearMonth, size_t> month_clusters;
    size_t noise = 0;
};

struct ExtractionResult {
    std::vector<PerceptionCluster> clusters;
    std::vector<LabeledDocument> noise;
    StageReport report;
};

// Drops every document whose exact (lat, lon) pair is shared by
// max_coincident or more documents; order is preserved otherwise.
std::vector<Document> spatial_noise_filter(std::vector<Document> docs, int max_coincident);

// Labels of all communities containing any stem of the document.
std::vector<std::string> match_labels(const Document& doc, const UopDictionary& dict);

// Sets semantic_score to the best community score over each document's
// labels and keeps strictly greater than cutoff.
std::vector<LabeledDocument> semantic_filter(std::vector<LabeledDocument> docs,
                                             const EmbeddingModel& model,
                                             const UopDictionary& dict, double cutoff);

std::map<YearMonth, std::vector<LabeledDocument>> partition_by_month(
    std::vector<LabeledDocument> docs);

// HDBSCAN over one month's documents. Input order does not matter: documents
// are sorted by id first. Returns clusters (ids assigned by the caller via
// first_id) and the noise documents.
std::pair<std::vector<PerceptionCluster>, std::vector<LabeledDocument>> cluster_spatial(
    std::vector<LabeledDocument> docs, YearMonth month, int min_cluster_size,
    int first_id = 0);

// Full pipeline: spatial filter, dictionary labeling, semantic filter,
// monthly partition, per-month clustering.
ExtractionResult extract_perceptions(const std::vector<Document>& geo_corpus,
                                     const UopDictionary& dict, const EmbeddingModel& model,
                                     const PipelineConfig& config);

void write_stage_csv(const StageReport& report, const std::string& run_label,
                     const std::string& path);

} // namespace uop

#endif
