#include "swising/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace swising {

std::vector<double> phase(const SpinConfig& sigma, const PartitionedGraph& graph) {
    if (static_cast<std::int64_t>(sigma.size()) != graph.num_vertices())
        throw std::invalid_argument("phase: config size mismatch");
    std::int64_t plus = 0;
    for (Spin s : sigma) plus += s > 0;
    const Spin majority = 2 * plus >= graph.num_vertices() ? Spin{1} : Spin{-1};
    std::vector<double> frac(graph.num_partitions(), 0.0);
    for (int i = 0; i < graph.num_partitions(); ++i) {
        const std::int64_t begin = graph.partition_begin(i);
        const std::int64_t end = begin + graph.partition_sizes()[i];
        std::int64_t count = 0;
        for (std::int64_t v = begin; v < end; ++v) count += sigma[v] == majority;
        frac[i] = graph.partition_sizes()[i] > 0
                      ? static_cast<double>(count) / static_cast<double>(graph.partition_sizes()[i])
                      : 0.0;
    }
    return frac;
}

double magnetization(const SpinConfig& sigma) {
    double m = 0.0;
    for (Spin s : sigma) m += s;
    return m / static_cast<double>(sigma.size());
}

CoupledChains::CoupledChains(const IsingModel& model, ChainKind kind, std::uint64_t seed)
    : model_(model), kind_(kind), rng_(seed) {
    const std::int64_t n = model.num_vertices();
    x = constant_config(n, Spin{1});
    y = constant_config(n, Spin{-1});
}

void CoupledChains::assign_from_vertex_coins(const std::vector<Vertex>& comp,
                                             SwScratch& scratch, SpinConfig& out) const {
    const std::int64_t n = model_.num_vertices();
    scratch.component_gamma.assign(n, 0.0);
    const auto& gamma = model_.gamma();
    for (std::int64_t v = 0; v < n; ++v) scratch.component_gamma[comp[v]] += gamma[v];
    scratch.component_spin.assign(n, 0);
    for (Vertex v = 0; v < n; ++v) {
        if (comp[v] != v) continue;
        const double p_plus = logistic(2.0 * scratch.component_gamma[v]);
        // the coin is keyed by the component's minimum vertex and shared
        // across the two chains
        scratch.component_spin[v] = vertex_coin_[v] < p_plus ? Spin{1} : Spin{-1};
    }
    out.resize(n);
    for (Vertex v = 0; v < n; ++v) out[v] = scratch.component_spin[comp[v]];
}

void CoupledChains::sw_coupled_step() {
    const auto& edges = model_.graph().edges();
    const auto& beta = model_.beta();
    const std::int64_t n = model_.num_vertices();

    edge_coin_.resize(edges.size());
    for (auto& c : edge_coin_) c = uniform01(rng_);
    vertex_coin_.resize(n);
    for (auto& c : vertex_coin_) c = uniform01(rng_);

    scratch_x_.uf.reset(n);
    scratch_y_.uf.reset(n);
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const double p = -std::expm1(-2.0 * beta[i]);
        if (edge_coin_[i] >= p) continue;
        if (x[edges[i].u] == x[edges[i].v]) scratch_x_.uf.unite(edges[i].u, edges[i].v);
        if (y[edges[i].u] == y[edges[i].v]) scratch_y_.uf.unite(edges[i].u, edges[i].v);
    }
    scratch_x_.uf.canonical_labels(comp_x_);
    scratch_y_.uf.canonical_labels(comp_y_);
    assign_from_vertex_coins(comp_x_, scratch_x_, x);
    assign_from_vertex_coins(comp_y_, scratch_y_, y);
}

void CoupledChains::gibbs_coupled_step() {
    const std::int64_t n = model_.num_vertices();
    for (std::int64_t i = 0; i < n; ++i) {
        const Vertex v = static_cast<Vertex>(uniform_below(rng_, n));
        const double coin = uniform01(rng_);
        x[v] = coin < gibbs_conditional_plus(model_, x, v) ? Spin{1} : Spin{-1};
        y[v] = coin < gibbs_conditional_plus(model_, y, v) ? Spin{1} : Spin{-1};
    }
}

void CoupledChains::step() {
    if (kind_ == ChainKind::SwendsenWang)
        sw_coupled_step();
    else
        gibbs_coupled_step();
}

CoalescenceReport coalescence_time(const IsingModel& model, std::uint64_t seed,
                                   std::int64_t max_steps, ChainKind kind,
                                   bool record_trajectory) {
    if (max_steps < 1) throw std::invalid_argument("coalescence_time: max_steps must be >= 1");
    CoupledChains chains(model, kind, seed);
    CoalescenceReport report;
    for (std::int64_t t = 1; t <= max_steps; ++t) {
        chains.step();
        if (record_trajectory) {
            const auto px = phase(chains.x, model.graph());
            const auto py = phase(chains.y, model.graph());
            double d = 0.0;
            for (std::size_t i = 0; i < px.size(); ++i)
                d = std::max(d, std::abs(px[i] - py[i]));
            report.phase_distance.push_back(d);
        }
        if (chains.equal()) {
            report.steps = t;
            return report;
        }
    }
    report.steps = max_steps;
    report.censored = true;
    return report;
}

ComponentStats component_stats(const IsingModel& model, const SpinConfig& sigma, Rng& rng) {
    const PercolationResult perc = sw_percolate(model, sigma, rng);
    const std::int64_t n = model.num_vertices();
    const auto& graph = model.graph();

    std::vector<std::int64_t> size_of(n, 0);
    for (Vertex v = 0; v < n; ++v) size_of[perc.component_of[v]] += 1;

    Vertex giant = 0;
    std::int64_t giant_size = 0;
    ComponentStats stats;
    for (Vertex v = 0; v < n; ++v) {
        if (perc.component_of[v] != v) continue;
        stats.num_components += 1;
        if (size_of[v] > giant_size) {
            giant_size = size_of[v];
            giant = v;
        }
    }
    stats.giant_size = giant_size;
    for (Vertex v = 0; v < n; ++v) {
        if (perc.component_of[v] != v || v == giant) continue;
        stats.sum_sq_small += size_of[v] * size_of[v];
    }
    stats.giant_size_per_partition.assign(graph.num_partitions(), 0);
    for (Vertex v = 0; v < n; ++v)
        if (perc.component_of[v] == giant)
            stats.giant_size_per_partition[graph.partition_of(v)] += 1;
    return stats;
}

CutAuditReport cut_audit(const PartitionedGraph& graph, std::int64_t num_trials, Rng& rng,
                         double m_threshold) {
    const std::int64_t n = graph.num_vertices();
    const std::int64_t min_side = static_cast<std::int64_t>(m_threshold * m_threshold);
    if (n < 10 * min_side)
        throw std::invalid_argument("cut_audit: graph too small for the side constraint");

    CutAuditReport report;
    report.pass = true;
    report.min_cut_over_n = std::numeric_limits<double>::infinity();
    std::vector<bool> in_u(n), in_s(n);
    for (std::int64_t trial = 0; trial < num_trials; ++trial) {
        std::int64_t u_size = 0;
        do {
            u_size = 0;
            for (std::int64_t v = 0; v < n; ++v) {
                in_u[v] = uniform01(rng) < 0.5;
                u_size += in_u[v];
            }
        } while (u_size < (n + 9) / 10);
        std::int64_t s_size = 0;
        do {
            s_size = 0;
            for (std::int64_t v = 0; v < n; ++v) {
                in_s[v] = in_u[v] && uniform01(rng) < 0.5;
                s_size += in_s[v];
            }
        } while (s_size < min_side || u_size - s_size < min_side);

        // cut within the induced subgraph G[U]
        std::int64_t cut = 0;
        for (const Edge& e : graph.edges())
            if (in_u[e.u] && in_u[e.v]) cut += in_s[e.u] != in_s[e.v];

        const double ratio = static_cast<double>(cut) / static_cast<double>(n);
        if (ratio < report.min_cut_over_n) {
            report.min_cut_over_n = ratio;
            report.worst_cut = cut;
            report.worst_u_size = u_size;
            report.worst_s_size = s_size;
        }
        if (ratio < m_threshold) report.pass = false;
    }
    report.trials = num_trials;
    return report;
}

double tv_distance(const std::vector<double>& empirical_counts,
                   const ExactDistribution& exact) {
    if (empirical_counts.size() != exact.probabilities.size())
        throw std::invalid_argument("tv_distance: state space size mismatch");
    double total = 0.0;
    for (double c : empirical_counts) total += c;
    if (!(total > 0.0)) throw std::invalid_argument("tv_distance: empty histogram");
    double tv = 0.0;
    for (std::size_t s = 0; s < empirical_counts.size(); ++s)
        tv += std::abs(empirical_counts[s] / total - exact.probabilities[s]);
    return 0.5 * tv;
}

}  // namespace swising
