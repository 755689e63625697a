#include "swising/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace swising {

SpinConfig config_from_index(std::uint32_t index, std::int64_t n) {
    SpinConfig sigma(n);
    for (std::int64_t v = 0; v < n; ++v)
        sigma[v] = (index >> v) & 1u ? Spin{1} : Spin{-1};
    return sigma;
}

std::uint32_t index_of_config(const SpinConfig& sigma) {
    std::uint32_t idx = 0;
    for (std::size_t v = 0; v < sigma.size(); ++v)
        if (sigma[v] > 0) idx |= 1u << v;
    return idx;
}

ExactDistribution brute_force_distribution(const IsingModel& model) {
    const std::int64_t n = model.num_vertices();
    if (n > 20)
        throw std::invalid_argument(
            "brute_force_distribution: enumeration supports at most 20 vertices");
    const std::uint32_t states = 1u << n;
    std::vector<double> logw(states);
    double max_logw = -std::numeric_limits<double>::infinity();
    for (std::uint32_t s = 0; s < states; ++s) {
        logw[s] = log_weight(model, config_from_index(s, n));
        max_logw = std::max(max_logw, logw[s]);
    }
    double total = 0.0;
    for (std::uint32_t s = 0; s < states; ++s) total += std::exp(logw[s] - max_logw);
    ExactDistribution dist;
    dist.log_partition = max_logw + std::log(total);
    dist.probabilities.resize(states);
    for (std::uint32_t s = 0; s < states; ++s)
        dist.probabilities[s] = std::exp(logw[s] - max_logw) / total;
    return dist;
}

Marginals exact_marginals(const IsingModel& model) {
    const ExactDistribution dist = brute_force_distribution(model);
    const std::int64_t n = model.num_vertices();
    const auto& edges = model.graph().edges();
    Marginals m;
    m.vertex_mean.assign(n, 0.0);
    m.edge_mean.assign(edges.size(), 0.0);
    for (std::uint32_t s = 0; s < dist.probabilities.size(); ++s) {
        const double p = dist.probabilities[s];
        for (std::int64_t v = 0; v < n; ++v)
            m.vertex_mean[v] += p * ((s >> v) & 1u ? 1.0 : -1.0);
        for (std::size_t e = 0; e < edges.size(); ++e) {
            const double su = (s >> edges[e].u) & 1u ? 1.0 : -1.0;
            const double sv = (s >> edges[e].v) & 1u ? 1.0 : -1.0;
            m.edge_mean[e] += p * su * sv;
        }
    }
    return m;
}

std::vector<double> sw_transition_row(const IsingModel& model, const SpinConfig& sigma) {
    throw_unless_valid(model, sigma);
    const std::int64_t n = model.num_vertices();
    if (n > 10)
        throw std::invalid_argument("sw_transition_row: at most 10 vertices");

    const auto& edges = model.graph().edges();
    std::vector<std::size_t> mono;  // indices of monochromatic edges
    for (std::size_t i = 0; i < edges.size(); ++i)
        if (sigma[edges[i].u] == sigma[edges[i].v]) mono.push_back(i);
    const std::size_t m = mono.size();
    if (m > 14)
        throw std::invalid_argument("sw_transition_row: at most 14 monochromatic edges");

    std::vector<double> keep_p(m);
    for (std::size_t j = 0; j < m; ++j) keep_p[j] = percolation_prob(model.beta()[mono[j]]);

    std::vector<double> row(std::size_t{1} << n, 0.0);
    UnionFind uf;
    std::vector<Vertex> comp;
    std::vector<std::uint32_t> comp_mask;
    std::vector<double> comp_plus, comp_gamma;
    std::vector<int> comp_slot;
    const auto& gamma = model.gamma();

    for (std::uint32_t kept = 0; kept < (1u << m); ++kept) {
        double w = 1.0;
        for (std::size_t j = 0; j < m; ++j)
            w *= (kept >> j) & 1u ? keep_p[j] : 1.0 - keep_p[j];
        if (w == 0.0) continue;

        uf.reset(n);
        for (std::size_t j = 0; j < m; ++j)
            if ((kept >> j) & 1u) uf.unite(edges[mono[j]].u, edges[mono[j]].v);
        uf.canonical_labels(comp);

        // per-component vertex masks, gamma sums, and +1 probabilities
        comp_mask.clear();
        comp_gamma.clear();
        comp_slot.assign(n, -1);
        for (Vertex v = 0; v < n; ++v) {
            if (comp[v] == v) {
                comp_slot[v] = static_cast<int>(comp_mask.size());
                comp_mask.push_back(0);
                comp_gamma.push_back(0.0);
            }
        }
        for (Vertex v = 0; v < n; ++v) {
            const int slot = comp_slot[comp[v]];
            comp_mask[slot] |= 1u << v;
            comp_gamma[slot] += gamma[v];
        }
        comp_plus.resize(comp_mask.size());
        for (std::size_t c = 0; c < comp_mask.size(); ++c)
            comp_plus[c] = logistic(2.0 * comp_gamma[c]);

        // distribute w over all component sign assignments
        const std::size_t num_comp = comp_mask.size();
        for (std::uint32_t assign = 0; assign < (1u << num_comp); ++assign) {
            double p = w;
            std::uint32_t target = 0;
            for (std::size_t c = 0; c < num_comp; ++c) {
                if ((assign >> c) & 1u) {
                    p *= comp_plus[c];
                    target |= comp_mask[c];
                } else {
                    p *= 1.0 - comp_plus[c];
                }
            }
            row[target] += p;
        }
    }
    return row;
}

std::map<std::pair<std::int64_t, std::int64_t>, double> phase_distribution(
    const IsingModel& model) {
    const auto& g = model.graph();
    if (g.num_partitions() != 2)
        throw std::invalid_argument("phase_distribution: exactly 2 partitions required");
    const std::int64_t n = model.num_vertices();
    if (n > 20) throw std::invalid_argument("phase_distribution: at most 20 vertices");

    const ExactDistribution dist = brute_force_distribution(model);
    const std::int64_t left = g.partition_sizes()[0];
    std::map<std::pair<std::int64_t, std::int64_t>, double> out;
    for (std::uint32_t s = 0; s < dist.probabilities.size(); ++s) {
        std::int64_t plus_l = 0, plus_r = 0;
        for (std::int64_t v = 0; v < n; ++v)
            if ((s >> v) & 1u) (v < left ? plus_l : plus_r) += 1;
        const bool majority_plus = 2 * (plus_l + plus_r) >= n;  // ties -> +1
        const std::int64_t cl = majority_plus ? plus_l : left - plus_l;
        const std::int64_t cr = majority_plus ? plus_r : (n - left) - plus_r;
        out[{cl, cr}] += dist.probabilities[s];
    }
    return out;
}

}  // namespace swising
