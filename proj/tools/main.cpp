#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "swising/experiments.hpp"

namespace {

nlohmann::json load_config(const std::string& path) {
    if (path.empty()) return nlohmann::json::object();
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path);
    return nlohmann::json::parse(in);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Swendsen-Wang and Gibbs sampling, mixing, and learning experiments on "
                 "stochastic partitioned Ising models"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags are accepted after the subcommand too

    std::string config_path;
    swising::CliOptions opts;
    app.add_option("--config", config_path, "JSON experiment config")->check(CLI::ExistingFile);
    app.add_option("--seed", opts.seed, "root RNG seed (default 12345)");
    app.add_option("--jobs", opts.jobs, "parallel worker bound (default 1)");
    app.add_option("--out", opts.out_dir, "output directory (default .)");

    auto* generate = app.add_subcommand("generate", "sample a graph and write its edge list");
    auto* sample = app.add_subcommand("sample", "run a chain, record magnetization and phase");
    auto* mix = app.add_subcommand("mix", "coalescence sweep of the grand coupling");
    auto* fixedpoint = app.add_subcommand("fixedpoint", "phase diagram of the simplified map");
    auto* learn = app.add_subcommand("learn", "contrastive-divergence error traces");
    auto* reproduce = app.add_subcommand("reproduce",
                                         "generate -> sample -> learn pipeline with both chains");

    CLI11_PARSE(app, argc, argv);

    try {
        const nlohmann::json cfg = load_config(config_path);
        if (generate->parsed()) return swising::cmd_generate(cfg, opts);
        if (sample->parsed()) return swising::cmd_sample(cfg, opts);
        if (mix->parsed()) return swising::cmd_mix(cfg, opts);
        if (fixedpoint->parsed()) return swising::cmd_fixedpoint(cfg, opts);
        if (learn->parsed()) return swising::cmd_learn(cfg, opts);
        if (reproduce->parsed()) return swising::cmd_reproduce(cfg, opts);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
