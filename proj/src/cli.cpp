#include "uop/cli.hpp"

#include "uop/analysis.hpp"
#include "uop/corpus_io.hpp"
#include "uop/dictionary.hpp"
#include "uop/embeddings.hpp"
#include "uop/error.hpp"
#include "uop/extract.hpp"
#include "uop/preprocess.hpp"
#include "uop/util.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>

using nlohmann::json;
namespace fs = std::filesystem;

namespace uop::cli {

namespace {

// Tracks written files so a failed run leaves no partial outputs behind.
class OutputGuard {
  public:
    ~OutputGuard() {
        if (!committed_)
            for (const auto& p : paths_)
                std::remove(p.c_str());
    }
    std::string track(const std::string& path) {
        paths_.push_back(path);
        return path;
    }
    CommandResult commit() {
        committed_ = true;
        return {paths_};
    }

  private:
    std::vector<std::string> paths_;
    bool committed_ = false;
};

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    int64_t ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - start)
            .count();
    }
};

json config_echo(const PipelineConfig& c) {
    json j;
    j["alpha"] = c.alpha;
    j["beta"] = c.beta;
    j["clique_size"] = c.clique_size;
    j["window"] = c.window;
    j["min_count"] = c.min_count;
    j["dim"] = c.dim;
    j["max_coincident"] = c.max_coincident;
    j["semantic_cutoff"] = c.semantic_cutoff;
    j["min_cluster_size"] = c.min_cluster_size;
    j["epochs"] = c.epochs;
    j["learning_rate"] = c.learning_rate;
    j["seed"] = c.seed;
    j["workers"] = c.workers;
    j["prune_rule"] = c.prune_rule == PruneRule::both_endpoints ? "both" : "either";
    j["std_divisor"] = c.std_divisor == StdDivisor::population ? "population" : "sample";
    j["comparison_scope"] = c.citywide_comparison ? "citywide" : "neighborhood";
    j["run_label"] = c.run_label;
    return j;
}

char hex_digit(uint64_t v) {
    return "0123456789abcdef"[v & 0xf];
}

std::string digest_hex(uint64_t digest) {
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[i] = hex_digit(digest);
        digest >>= 4;
    }
    return s;
}

// Manifest is the run log (config echo, input digests, stage counts,
// timings). Timings vary run to run, so it is not part of the
// deterministic output set.
void write_manifest(const std::string& command, const PipelineConfig& config,
                    const std::vector<std::string>& inputs,
                    const std::vector<std::string>& outputs, const json& extra, int64_t ms,
                    const std::string& path) {
    json m;
    m["command"] = command;
    m["config"] = config_echo(config);
    for (const auto& in : inputs)
        m["inputs"][in] = digest_hex(fnv1a_file(in));
    m["outputs"] = outputs;
    if (!extra.is_null())
        m["stats"] = extra;
    m["timing_ms"] = ms;
    std::ofstream out(path);
    if (!out)
        throw Error("cannot write manifest: " + path);
    out << m.dump(2) << '\n';
}

std::string out_path(const PipelineConfig& config, const std::string& name) {
    fs::create_directories(config.out_dir);
    return (fs::path(config.out_dir) / name).string();
}

void require(const std::string& value, const std::string& key) {
    if (value.empty())
        throw Error("config key '" + key + "' is required for this command");
}

std::vector<GeoFeature> cluster_features(const std::vector<PerceptionCluster>& clusters) {
    std::vector<GeoFeature> features;
    for (const auto& c : clusters) {
        for (const auto& m : c.members) {
            GeoFeature f;
            f.doc_id = m.doc.id;
            f.pos = *m.doc.geo;
            f.cluster_id = c.id;
            f.labels = m.labels;
            f.month = format_year_month(c.month);
            features.push_back(std::move(f));
        }
    }
    return features;
}

PolarityClass polarity_of_label(const std::string& label, const UopDictionary* dict) {
    try {
        return polarity_class(label);
    } catch (const Error&) {
        if (dict) {
            for (const auto& c : dict->communities)
                if (c.label == label)
                    return c.polarity == Polarity::positive ? PolarityClass::positive
                                                            : PolarityClass::negative;
        }
        throw;
    }
}

} // namespace

CommandResult run_build_dict(const PipelineConfig& config) {
    config.validate();
    require(config.reviews, "reviews");
    require(config.lexicon_dir, "lexicon_dir");
    Timer timer;
    OutputGuard guard;

    auto lex = load_lexicons(config.lexicon_dir);
    auto corpus = load_corpus(config.reviews, /*require_geo=*/false);
    std::cerr << "build-dict: " << corpus.records.size() << " reviews, "
              << corpus.rejects.size() << " rejected lines\n";
    auto docs = preprocess_corpus(corpus.records, lex);

    TokenSentences sentences;
    for (const auto& d : docs)
        for (const auto& s : d.sentences)
            sentences.push_back(s.surfaces);
    size_t doc_count = docs.size();

    TrainConfig tc;
    tc.window = config.window;
    tc.min_count = config.min_count;
    tc.dim = config.dim;
    tc.epochs = config.epochs;
    tc.learning_rate = config.learning_rate;
    tc.seed = config.seed;
    tc.workers = config.workers;
    auto model = train(sentences, tc);
    std::cerr << "build-dict: vocabulary " << model.size() << " words ("
              << sentences.size() << " sentences, " << doc_count << " documents)\n";

    auto qualifiers = extract_qualifiers(docs, lex);
    if (qualifiers.empty())
        throw Error("no qualifier words found in the review corpus");
    auto build = build_graph(qualifiers, model, lex, config.alpha,
                             static_cast<size_t>(config.clique_size));
    if (!build.dropped.empty())
        std::cerr << "build-dict: " << build.dropped.size()
                  << " qualifiers below min_count dropped\n";
    auto pruned = prune(build.graph, config.beta, config.prune_rule);
    auto communities = k_clique_communities(pruned, config.clique_size);
    if (communities.empty())
        throw Error("no communities found (graph too sparse for k = " +
                    std::to_string(config.clique_size) + ")");
    std::vector<std::string> notes;
    auto dict = assemble_dictionary(communities, lex, model, config.alpha, config.beta,
                                    config.clique_size, config.label_overrides, &notes);
    for (const auto& n : notes)
        std::cerr << "build-dict: " << n << '\n';

    auto dict_path = guard.track(out_path(config, "dictionary.txt"));
    save_dictionary(dict, dict_path);
    auto model_path = guard.track(out_path(config, "model.txt"));
    save_model(model, model_path);

    json stats;
    stats["documents"] = doc_count;
    stats["sentences"] = sentences.size();
    stats["vocabulary"] = model.size();
    stats["qualifiers"] = qualifiers.size();
    stats["graph_vertices"] = build.graph.vertices.size();
    stats["graph_edges"] = build.graph.edges.size();
    stats["pruned_vertices"] = pruned.vertices.size();
    stats["pruned_edges"] = pruned.edges.size();
    stats["communities"] = dict.communities.size();
    auto manifest_path = guard.track(out_path(config, "manifest-build-dict.json"));
    write_manifest("build-dict", config, {config.reviews}, {dict_path, model_path}, stats,
                   timer.ms(), manifest_path);
    std::cerr << "build-dict: " << dict.communities.size() << " communities -> " << dict_path
              << '\n';
    return guard.commit();
}

CommandResult run_extract(const PipelineConfig& config) {
    config.validate();
    require(config.geo_corpus, "geo_corpus");
    require(config.lexicon_dir, "lexicon_dir");
    require(config.dictionary_path, "dictionary");
    require(config.model_path, "model");
    Timer timer;
    OutputGuard guard;

    auto lex = load_lexicons(config.lexicon_dir);
    auto dict = load_dictionary(config.dictionary_path);
    auto model = load_model(config.model_path);
    auto corpus = load_corpus(config.geo_corpus, /*require_geo=*/true);
    std::cerr << "extract: " << corpus.records.size() << " documents, "
              << corpus.rejects.size() << " rejected lines\n";
    auto docs = preprocess_corpus(corpus.records, lex);

    auto result = extract_perceptions(docs, dict, model, config);
    std::cerr << "extract: " << result.report.total << " -> " << result.report.after_spatial
              << " -> " << result.report.matched << " -> " << result.report.after_semantic
              << " documents; " << result.clusters.size() << " clusters\n";

    auto geojson_path = guard.track(out_path(config, "perceptions.geojson"));
    write_geojson(cluster_features(result.clusters), geojson_path);
    auto stages_path = guard.track(out_path(config, "stage_counts.csv"));
    write_stage_csv(result.report, config.run_label, stages_path);

    json stats;
    stats["total"] = result.report.total;
    stats["after_spatial"] = result.report.after_spatial;
    stats["matched"] = result.report.matched;
    stats["after_semantic"] = result.report.after_semantic;
    stats["clusters"] = result.clusters.size();
    stats["noise"] = result.report.noise;
    auto manifest_path = guard.track(out_path(config, "manifest-extract.json"));
    write_manifest("extract", config,
                   {config.geo_corpus, config.dictionary_path, config.model_path},
                   {geojson_path, stages_path}, stats, timer.ms(), manifest_path);
    return guard.commit();
}

CommandResult run_analyze(const PipelineConfig& config) {
    config.validate();
    require(config.geojson_path, "geojson");
    require(config.neighborhoods, "neighborhoods");
    Timer timer;
    OutputGuard guard;

    auto features = load_geojson(config.geojson_path);
    auto neighborhoods = load_neighborhoods(config.neighborhoods);

    // categories: the dictionary's labels when available, else what the
    // extraction output carries
    std::set<std::string> label_set;
    if (!config.dictionary_path.empty()) {
        auto dict = load_dictionary(config.dictionary_path);
        for (const auto& c : dict.communities)
            label_set.insert(c.label);
    } else {
        for (const auto& f : features)
            label_set.insert(f.labels.begin(), f.labels.end());
    }
    std::vector<std::string> categories(label_set.begin(), label_set.end());

    // regroup the flat features into clusters for counting
    std::map<std::pair<int, std::string>, PerceptionCluster> by_cluster;
    for (const auto& f : features) {
        auto key = std::make_pair(f.cluster_id, f.month);
        auto& cluster = by_cluster[key];
        cluster.id = f.cluster_id;
        auto dash = f.month.find('-');
        cluster.month = YearMonth{std::stoi(f.month.substr(0, dash)),
                                  std::stoi(f.month.substr(dash + 1))};
        LabeledDocument doc;
        doc.doc.id = f.doc_id;
        doc.doc.geo = f.pos;
        doc.labels = f.labels;
        cluster.members.push_back(std::move(doc));
    }
    std::vector<PerceptionCluster> clusters;
    for (auto& [key, c] : by_cluster)
        clusters.push_back(std::move(c));

    auto counts = count_points(clusters, neighborhoods, categories);
    auto report = z_scores(counts, config.std_divisor);
    auto zscore_path = guard.track(out_path(config, "zscores.csv"));
    write_zscore_csv(report, zscore_path);

    // term frequencies over the clustered documents, via the geo corpus
    std::vector<std::string> inputs = {config.geojson_path, config.neighborhoods};
    auto terms_path = guard.track(out_path(config, "term_frequencies.csv"));
    if (!config.geo_corpus.empty() && !config.lexicon_dir.empty()) {
        auto lex = load_lexicons(config.lexicon_dir);
        auto corpus = load_corpus(config.geo_corpus, /*require_geo=*/true);
        std::set<std::string> clustered_ids;
        for (const auto& f : features)
            clustered_ids.insert(f.doc_id);
        std::vector<RawRecord> kept;
        for (auto& r : corpus.records)
            if (clustered_ids.contains(r.id))
                kept.push_back(std::move(r));
        auto docs = preprocess_corpus(kept, lex);
        write_term_csv(term_frequencies(docs), terms_path);
        inputs.push_back(config.geo_corpus);
    } else {
        write_term_csv({}, terms_path);
        std::cerr << "analyze: geo_corpus/lexicon_dir not set, term frequencies empty\n";
    }

    json stats;
    stats["features"] = features.size();
    stats["categories"] = categories.size();
    stats["neighborhoods"] = neighborhoods.size();
    auto manifest_path = guard.track(out_path(config, "manifest-analyze.json"));
    write_manifest("analyze", config, inputs, {zscore_path, terms_path}, stats, timer.ms(),
                   manifest_path);
    return guard.commit();
}

CommandResult run_compare(const PipelineConfig& config) {
    config.validate();
    require(config.geojson_path, "geojson");
    require(config.neighborhoods, "neighborhoods");
    require(config.external_points, "external_points");
    Timer timer;
    OutputGuard guard;

    auto features = load_geojson(config.geojson_path);
    auto neighborhoods = load_neighborhoods(config.neighborhoods);
    auto external_raw = load_external_points(config.external_points);
    if (external_raw.empty())
        throw Error("external points file is empty: " + config.external_points);

    UopDictionary dict;
    bool have_dict = !config.dictionary_path.empty();
    if (have_dict)
        dict = load_dictionary(config.dictionary_path);

    std::vector<PolarizedPoint> external;
    for (const auto& p : external_raw)
        external.push_back({p.pos, polarity_class(p.label)});
    std::vector<PolarizedPoint> ours;
    for (const auto& f : features)
        for (const auto& label : f.labels)
            ours.push_back({f.pos, polarity_of_label(label, have_dict ? &dict : nullptr)});

    auto entries =
        nearest_distance_report(external, ours, neighborhoods, config.citywide_comparison);
    auto csv_path = guard.track(out_path(config, "distance_comparison.csv"));
    write_distance_csv(entries, csv_path);

    json stats;
    stats["external_points"] = external.size();
    stats["our_points"] = ours.size();
    auto manifest_path = guard.track(out_path(config, "manifest-compare.json"));
    write_manifest("compare", config,
                   {config.geojson_path, config.neighborhoods, config.external_points},
                   {csv_path}, stats, timer.ms(), manifest_path);
    return guard.commit();
}

} // namespace uop::cli
