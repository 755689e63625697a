#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "swising/diagnostics.hpp"
#include "swising/learning.hpp"
#include "swising/simplified_sw.hpp"

namespace swising {

struct CliOptions {
    std::uint64_t seed = 12345;
    int jobs = 1;
    std::string out_dir = ".";
};

// Graph construction from a config node: {"n","alphas","probs"} for a
// stochastic partitioned graph, {"complete_bipartite":[n,m]}, or
// {"file":"path"} for an edge list on disk.
PartitionedGraph build_graph(const nlohmann::json& node, std::uint64_t seed);

// Scalar or {"dist":"uniform","lo":..,"hi":..} parameter node.
double draw_param(const nlohmann::json& node, Rng& rng);

// Subcommands. Each returns a process exit code and writes CSV/text artifacts
// under opts.out_dir, every file starting with a comment block echoing the
// effective config and root seed.
int cmd_generate(const nlohmann::json& cfg, const CliOptions& opts);
int cmd_sample(const nlohmann::json& cfg, const CliOptions& opts);
int cmd_mix(const nlohmann::json& cfg, const CliOptions& opts);
int cmd_fixedpoint(const nlohmann::json& cfg, const CliOptions& opts);
int cmd_learn(const nlohmann::json& cfg, const CliOptions& opts);
int cmd_reproduce(const nlohmann::json& cfg, const CliOptions& opts);

}  // namespace swising
