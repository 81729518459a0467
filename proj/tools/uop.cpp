#include "uop/cli.hpp"
#include "uop/config.hpp"
#include "uop/error.hpp"

#include <CLI11.hpp>

#include <functional>
#include <iostream>
#include <string>

int main(int argc, char** argv) {
    CLI::App app{"urban perception extraction from geolocated free-text"};
    app.require_subcommand(1);

    struct Common {
        std::string config_path;
        std::string out_dir;
        int64_t seed = -1;
    };

    auto add_common = [&](CLI::App* cmd) {
        auto opts = std::make_shared<Common>();
        cmd->add_option("--config", opts->config_path, "pipeline config file")->required();
        cmd->add_option("--seed", opts->seed, "override the config seed");
        cmd->add_option("--out", opts->out_dir, "override the output directory");
        return opts;
    };

    auto load = [](const Common& opts) {
        auto cfg = uop::load_config(opts.config_path);
        if (opts.seed >= 0)
            cfg.seed = static_cast<uint64_t>(opts.seed);
        if (!opts.out_dir.empty())
            cfg.out_dir = opts.out_dir;
        return cfg;
    };

    std::function<uop::cli::CommandResult()> action;

    auto* build = app.add_subcommand("build-dict", "learn the perception dictionary");
    auto build_opts = add_common(build);
    build->callback([&, build_opts]() {
        action = [&, build_opts]() { return uop::cli::run_build_dict(load(*build_opts)); };
    });

    auto* extract = app.add_subcommand("extract", "extract perception clusters");
    auto extract_opts = add_common(extract);
    extract->callback([&, extract_opts]() {
        action = [&, extract_opts]() { return uop::cli::run_extract(load(*extract_opts)); };
    });

    auto* analyze = app.add_subcommand("analyze", "per-neighborhood strength reports");
    auto analyze_opts = add_common(analyze);
    analyze->callback([&, analyze_opts]() {
        action = [&, analyze_opts]() { return uop::cli::run_analyze(load(*analyze_opts)); };
    });

    auto* compare = app.add_subcommand("compare", "distance comparison with external points");
    auto compare_opts = add_common(compare);
    compare->callback([&, compare_opts]() {
        action = [&, compare_opts]() { return uop::cli::run_compare(load(*compare_opts)); };
    });

    CLI11_PARSE(app, argc, argv);

    try {
        auto result = action();
        for (const auto& path : result.outputs)
            std::cout << path << '\n';
        return 0;
    } catch (const uop::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
