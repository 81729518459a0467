#include "uop/extract.hpp"

#include "uop/error.hpp"
#include "uop/hdbscan.hpp"
#include "uop/kernels.hpp"

#include <algorithm>
#include <fstream>
#include <map>

namespace uop {

std::vector<Document> spatial_noise_filter(std::vector<Document> docs, int max_coincident) {
    std::map<std::pair<double, double>, int> occupancy;
    for (const auto& d : docs) {
        if (!d.geo)
            throw Error("spatial filter requires geolocated documents (doc " + d.id + ")");
        ++occupancy[{d.geo->lat, d.geo->lon}];
    }
    std::vector<Document> out;
    out.reserve(docs.size());
    for (auto& d : docs)
        if (occupancy[{d.geo->lat, d.geo->lon}] < max_coincident)
            out.push_back(std::move(d));
    return out;
}

std::vector<std::string> match_labels(const Document& doc, const UopDictionary& dict) {
    return dict.match_stems(stem_tokens(doc));
}

std::vector<LabeledDocument> semantic_filter(std::vector<LabeledDocument> docs,
                                             const EmbeddingModel& model,
                                             const UopDictionary& dict, double cutoff) {
    // community centroids once, then the per-document kernel
    std::map<std::string, int> label_to_index;
    for (size_t i = 0; i < dict.communities.size(); ++i)
        label_to_index[dict.communities[i].label] = static_cast<int>(i);
    std::vector<std::vector<double>> centroids(dict.communities.size());
    for (size_t i = 0; i < dict.communities.size(); ++i) {
        std::set<std::string> members(dict.communities[i].members.begin(),
                                      dict.communities[i].members.end());
        centroids[i] = community_centroid(model, members);
    }
    std::vector<std::vector<double>> doc_means(docs.size());
    std::vector<std::vector<int>> doc_communities(docs.size());
    for (size_t i = 0; i < docs.size(); ++i) {
        auto tokens = surface_tokens(docs[i].doc);
        if (!mean_vector(model, tokens, doc_means[i]))
            doc_means[i].clear();
        for (const auto& label : docs[i].labels)
            doc_communities[i].push_back(label_to_index.at(label));
    }
    auto scores = kernels::semantic_scores_parallel(doc_means, doc_communities, centroids);

    std::vector<LabeledDocument> out;
    for (size_t i = 0; i < docs.size(); ++i) {
        docs[i].semantic_score = scores[i];
        if (scores[i] > cutoff)
            out.push_back(std::move(docs[i]));
    }
    return out;
}

std::map<YearMonth, std::vector<LabeledDocument>> partition_by_month(
    std::vector<LabeledDocument> docs) {
    std::map<YearMonth, std::vector<LabeledDocument>> parts;
    for (auto& d : docs)
        parts[month_of_timestamp(d.doc.timestamp)].push_back(std::move(d));
    return parts;
}

std::pair<std::vector<PerceptionCluster>, std::vector<LabeledDocument>> cluster_spatial(
    std::vector<LabeledDocument> docs, YearMonth month, int min_cluster_size, int first_id) {
    std::sort(docs.begin(), docs.end(), [](const LabeledDocument& a, const LabeledDocument& b) {
        return a.doc.id < b.doc.id;
    });
    std::vector<GeoPoint> points;
    points.reserve(docs.size());
    for (const auto& d : docs) {
        if (!d.doc.geo)
            throw Error("clustering requires geolocated documents (doc " + d.doc.id + ")");
        points.push_back(*d.doc.geo);
    }
    auto res = hdbscan_geo(points, min_cluster_size);

    std::vector<PerceptionCluster> clusters(res.n_clusters);
    std::vector<LabeledDocument> noise;
    for (int c = 0; c < res.n_clusters; ++c) {
        clusters[c].id = first_id + c;
        clusters[c].month = month;
    }
    for (size_t i = 0; i < docs.size(); ++i) {
        if (res.labels[i] < 0)
            noise.push_back(std::move(docs[i]));
        else
            clusters[res.labels[i]].members.push_back(std::move(docs[i]));
    }
    for (auto& cl : clusters) {
        std::vector<GeoPoint> pts;
        pts.reserve(cl.members.size());
        for (const auto& m : cl.members)
            pts.push_back(*m.doc.geo);
        cl.centroid = spherical_mean(pts);
    }
    return {std::move(clusters), std::move(noise)};
}

ExtractionResult extract_perceptions(const std::vector<Document>& geo_corpus,
                                     const UopDictionary& dict, const EmbeddingModel& model,
                                     const PipelineConfig& config) {
    ExtractionResult res;
    res.report.total = geo_corpus.size();

    auto spatial = spatial_noise_filter(geo_corpus, config.max_coincident);
    res.report.after_spatial = spatial.size();

    std::vector<LabeledDocument> labeled;
    for (auto& d : spatial) {
        auto labels = match_labels(d, dict);
        if (labels.empty())
            continue;
        labeled.push_back({std::move(d), std::move(labels), 0.0});
    }
    res.report.matched = labeled.size();

    auto kept = semantic_filter(std::move(labeled), model, dict, config.semantic_cutoff);
    res.report.after_semantic = kept.size();

    auto parts = partition_by_month(std::move(kept));
    int next_id = 0;
    for (auto& [month, docs] : parts) {
        auto [clusters, noise] =
            cluster_spatial(std::move(docs), month, config.min_cluster_size, next_id);
        next_id += static_cast<int>(clusters.size());
        res.report.month_clusters[month] = clusters.size();
        res.report.noise += noise.size();
        for (auto& c : clusters)
            res.clusters.push_back(std::move(c));
        for (auto& d : noise)
            res.noise.push_back(std::move(d));
    }
    return res;
}

void write_stage_csv(const StageReport& report, const std::string& run_label,
                     const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw Error("cannot write stage report: " + path);
    out << "stage,count,label\n";
    out << "total_documents," << report.total << ',' << run_label << '\n';
    out << "after_spatial_filter," << report.after_spatial << ',' << run_label << '\n';
    out << "matched_dictionary," << report.matched << ',' << run_label << '\n';
    out << "after_semantic_filter," << report.after_semantic << ',' << run_label << '\n';
    for (const auto& [month, count] : report.month_clusters)
        out << "clusters_" << format_year_month(month) << ',' << count << ',' << run_label
            << '\n';
    out << "noise_documents," << report.noise << ',' << run_label << '\n';
}

} // namespace uop
