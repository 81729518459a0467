#ifndef UOP_CONFIG_HPP
#define UOP_CONFIG_HPP

#include <cstdint>
#include <map>
#include <string>

namespace uop {

enum class PruneRule { both_endpoints, either_endpoint };
enum class StdDivisor { population, sample };

struct PipelineConfig {
    double alpha = 0.8;           // vector-vs-sentiment mixing weight
    double beta = 1.13;           // edge-pruning restriction level
    int clique_size = 6;          // k of the percolation method
    int window = 8;               // word2vec ws
    int min_count = 20;
    int dim = 300;                // vector dimension
    int max_coincident = 10;      // spatial noise threshold
    double semantic_cutoff = 18.0;
    int min_cluster_size = 5;
    int epochs = 5;
    double learning_rate = 0.025;
    uint64_t seed = 1;
    int workers = 1;
    PruneRule prune_rule = PruneRule::both_endpoints;
    StdDivisor std_divisor = StdDivisor::population;
    bool citywide_comparison = false;
    std::string run_label = "run";

    std::string reviews;
    std::string geo_corpus;
    std::string lexicon_dir;
    std::string neighborhoods;
    std::string external_points;
    std::string out_dir = ".";
    std::string dictionary_path;
    std::string model_path;
    std::string geojson_path;
    std::map<std::string, std::string> label_overrides; // member word -> label

    void validate() const; // throws Error on violated invariants
};

// Flat "key = value" file with '#' comments. Relative paths are resolved
// against the config file's directory.
PipelineConfig load_config(const std::string& path);

} // namespace uop

#endif
