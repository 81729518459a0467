#include "uop/config.hpp"

#include "uop/error.hpp"
#include "uop/util.hpp"

#include <filesystem>
#include <fstream>

namespace uop {

void PipelineConfig::validate() const {
    if (alpha < 0.0 || alpha > 1.0)
        throw Error("config: alpha must be in [0,1]");
    if (beta < 0.0)
        throw Error("config: beta must be >= 0");
    if (clique_size < 2)
        throw Error("config: clique_size must be >= 2");
    if (window <= 0 || min_count <= 0 || dim <= 0 || max_coincident <= 0 ||
        min_cluster_size <= 0 || epochs <= 0 || workers <= 0)
        throw Error("config: counts must be positive");
    if (learning_rate <= 0.0)
        throw Error("config: learning_rate must be positive");
}

namespace {

std::string resolve(const std::filesystem::path& base, const std::string& value) {
    if (value.empty())
        return value;
    std::filesystem::path p(value);
    if (p.is_absolute())
        return value;
    return (base / p).lexically_normal().string();
}

} // namespace

PipelineConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open config file: " + path);
    auto base = std::filesystem::path(path).parent_path();
    PipelineConfig cfg;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto t = std::string(trim(line));
        if (t.empty() || t[0] == '#')
            continue;
        auto eq = t.find('=');
        if (eq == std::string::npos)
            throw Error("config line " + std::to_string(line_no) + ": expected key = value");
        std::string key(trim(t.substr(0, eq)));
        std::string value(trim(t.substr(eq + 1)));
        try {
            if (key == "alpha") cfg.alpha = std::stod(value);
            else if (key == "beta") cfg.beta = std::stod(value);
            else if (key == "clique_size") cfg.clique_size = std::stoi(value);
            else if (key == "window") cfg.window = std::stoi(value);
            else if (key == "min_count") cfg.min_count = std::stoi(value);
            else if (key == "dim") cfg.dim = std::stoi(value);
            else if (key == "max_coincident") cfg.max_coincident = std::stoi(value);
            else if (key == "semantic_cutoff") cfg.semantic_cutoff = std::stod(value);
            else if (key == "min_cluster_size") cfg.min_cluster_size = std::stoi(value);
            else if (key == "epochs") cfg.epochs = std::stoi(value);
            else if (key == "learning_rate") cfg.learning_rate = std::stod(value);
            else if (key == "seed") cfg.seed = std::stoull(value);
            else if (key == "workers") cfg.workers = std::stoi(value);
            else if (key == "run_label") cfg.run_label = value;
            else if (key == "prune_rule") {
                if (value == "both") cfg.prune_rule = PruneRule::both_endpoints;
                else if (value == "either") cfg.prune_rule = PruneRule::either_endpoint;
                else throw Error("bad prune_rule (both|either)");
            } else if (key == "std_divisor") {
                if (value == "population") cfg.std_divisor = StdDivisor::population;
                else if (value == "sample") cfg.std_divisor = StdDivisor::sample;
                else throw Error("bad std_divisor (population|sample)");
            } else if (key == "comparison_scope") {
                if (value == "citywide") cfg.citywide_comparison = true;
                else if (value == "neighborhood") cfg.citywide_comparison = false;
                else throw Error("bad comparison_scope (neighborhood|citywide)");
            }
            else if (key == "reviews") cfg.reviews = resolve(base, value);
            else if (key == "geo_corpus") cfg.geo_corpus = resolve(base, value);
            else if (key == "lexicon_dir") cfg.lexicon_dir = resolve(base, value);
            else if (key == "neighborhoods") cfg.neighborhoods = resolve(base, value);
            else if (key == "external_points") cfg.external_points = resolve(base, value);
            else if (key == "out_dir") cfg.out_dir = resolve(base, value);
            else if (key == "dictionary") cfg.dictionary_path = resolve(base, value);
            else if (key == "model") cfg.model_path = resolve(base, value);
            else if (key == "geojson") cfg.geojson_path = resolve(base, value);
            else if (key.starts_with("label_override.")) {
                cfg.label_overrides[key.substr(std::string("label_override.").size())] = value;
            } else {
                throw Error("unknown key '" + key + "'");
            }
        } catch (const Error&) {
            throw;
        } catch (const std::exception&) {
            throw Error("config line " + std::to_string(line_no) + ": bad value for " + key);
        }
    }
    cfg.validate();
    return cfg;
}

} // namespace uop
