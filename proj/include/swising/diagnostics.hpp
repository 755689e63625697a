#pragma once

#include <cstdint>
#include <vector>

#include "swising/oracle.hpp"
#include "swising/samplers.hpp"

namespace swising {

// Per-partition fraction of the globally-majority spin class (ties -> +1).
std::vector<double> phase(const SpinConfig& sigma, const PartitionedGraph& graph);

double magnetization(const SpinConfig& sigma);

struct CoalescenceReport {
    std::int64_t steps = 0;  // first step with X == Y; max_steps when censored
    bool censored = false;
    std::vector<double> phase_distance;  // per-step max-norm phase gap, when recorded
};

// Two coupled chains — one per step of a grand coupling — sharing their whole
// randomness stream. Both chains stay marginally distributed as the
// unconditioned dynamics, and equal states stay equal forever.
struct CoupledChains {
    CoupledChains(const IsingModel& model, ChainKind kind, std::uint64_t seed);
    void step();
    bool equal() const { return x == y; }

    SpinConfig x;  // started all +1
    SpinConfig y;  // started all -1

private:
    const IsingModel& model_;
    ChainKind kind_;
    Rng rng_;
    SwScratch scratch_x_, scratch_y_;
    std::vector<double> edge_coin_;
    std::vector<double> vertex_coin_;
    std::vector<Vertex> comp_x_, comp_y_;

    void sw_coupled_step();
    void gibbs_coupled_step();
    void assign_from_vertex_coins(const std::vector<Vertex>& comp, SwScratch& scratch,
                                  SpinConfig& out) const;
};

// Runs the grand coupling from the all-(+1)/all-(-1) pair until the states
// are identical or max_steps is hit (a censored report, not an error).
CoalescenceReport coalescence_time(const IsingModel& model, std::uint64_t seed,
                                   std::int64_t max_steps, ChainKind kind,
                                   bool record_trajectory = false);

struct ComponentStats {
    std::vector<std::int64_t> giant_size_per_partition;  // |C1 ∩ V_i|
    std::int64_t giant_size = 0;
    std::int64_t sum_sq_small = 0;  // sum over non-giant components of |C_i|^2
    std::int64_t num_components = 0;
};

// One percolation step from sigma; reports the giant component split by
// partition and the small-component second moment.
ComponentStats component_stats(const IsingModel& model, const SpinConfig& sigma, Rng& rng);

struct CutAuditReport {
    bool pass = false;
    double min_cut_over_n = 0.0;
    std::int64_t worst_cut = 0;
    std::int64_t worst_u_size = 0;
    std::int64_t worst_s_size = 0;
    std::int64_t trials = 0;
};

// Empirical audit of the cut lower bound: samples U (per-vertex fair coins,
// resampled until |U| >= n/10) and S subset of U (fair coins, both sides
// >= m_threshold^2), and checks cut_{G[U]}(S) >= m_threshold * n throughout.
CutAuditReport cut_audit(const PartitionedGraph& graph, std::int64_t num_trials, Rng& rng,
                         double m_threshold);

// Total variation distance between an empirical histogram (counts; normalized
// internally) and an exact distribution over the same state space.
double tv_distance(const std::vector<double>& empirical_counts,
                   const ExactDistribution& exact);

}  // namespace swising
