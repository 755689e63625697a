#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "swising/model.hpp"

namespace swising {

// Exact distribution over all 2^n spin configurations. State index: bit v is
// 1 iff sigma_v = +1.
struct ExactDistribution {
    std::vector<double> probabilities;
    double log_partition = 0.0;
};

SpinConfig config_from_index(std::uint32_t index, std::int64_t n);
std::uint32_t index_of_config(const SpinConfig& sigma);

// Full 2^n enumeration with log-sum-exp normalization; n <= 20.
ExactDistribution brute_force_distribution(const IsingModel& model);

struct Marginals {
    std::vector<double> vertex_mean;  // E[sigma_v]
    std::vector<double> edge_mean;    // E[sigma_u sigma_v], per edge
};

Marginals exact_marginals(const IsingModel& model);

// One row of the exact Swendsen-Wang transition kernel: sums over all 2^|M|
// percolation outcomes of the monochromatic edge set M, each weighted by its
// retention probability, times the component-spin probabilities consistent
// with the target state. Requires n <= 10 and |M| <= 14.
std::vector<double> sw_transition_row(const IsingModel& model, const SpinConfig& sigma);

// Pushforward of mu onto the phase, keyed by the majority-spin counts per
// partition (fractions are counts / partition sizes). Two partitions, n <= 20.
std::map<std::pair<std::int64_t, std::int64_t>, double> phase_distribution(
    const IsingModel& model);

}  // namespace swising
