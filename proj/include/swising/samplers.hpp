#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "swising/model.hpp"

namespace swising {

enum class ChainKind { SwendsenWang, Gibbs };

const char* chain_name(ChainKind kind);

// Outcome of the Swendsen-Wang percolation step: the retained monochromatic
// edges and the component labeling of (V, retained).
struct PercolationResult {
    std::vector<std::int64_t> retained_edges;  // indices into graph.edges()
    std::vector<Vertex> component_of;          // canonical min-vertex labels
};

// Reusable buffers so one Swendsen-Wang step allocates nothing.
struct SwScratch {
    UnionFind uf;
    std::vector<Vertex> component_of;
    std::vector<double> component_gamma;
    std::vector<Spin> component_spin;
};

// Instrumentation: edge_ops counts edge visits (percolation coins for SW,
// neighbor reads for Gibbs), the per-step work both chains are compared on.
struct WorkCounter {
    std::uint64_t edge_ops = 0;
    std::uint64_t steps = 0;
};

// Step 1+2 of the dynamics: keep each monochromatic edge independently with
// probability 1 - exp(-2 beta_uv). Consumes one uniform per edge in canonical
// edge-list order regardless of monochromaticity, so two chains driven by
// identical streams share their percolation coins.
PercolationResult sw_percolate(const IsingModel& model, const SpinConfig& sigma, Rng& rng);

// Step 3: every component C independently becomes +1 with probability
// exp(2 S)/(1 + exp(2 S)), S = sum of gamma over C; uniform coin when S = 0.
// Consumes one uniform per component in ascending canonical id order.
SpinConfig sw_assign_spins(const IsingModel& model, const PercolationResult& perc, Rng& rng);

// One full Swendsen-Wang step (percolate then reassign); input unmodified.
SpinConfig sw_step(const IsingModel& model, const SpinConfig& sigma, Rng& rng);
void sw_step(const IsingModel& model, const SpinConfig& sigma, SpinConfig& out, Rng& rng,
             SwScratch& scratch, WorkCounter* work = nullptr);

// Pr(sigma_v = +1 | rest) = logistic(2 (sum_{u~v} beta_uv sigma_u + gamma_v)).
double gibbs_conditional_plus(const IsingModel& model, const SpinConfig& sigma, Vertex v);

SpinConfig gibbs_site_update(const IsingModel& model, const SpinConfig& sigma, Vertex v,
                             Rng& rng);
void gibbs_site_update_inplace(const IsingModel& model, SpinConfig& sigma, Vertex v, Rng& rng,
                               WorkCounter* work = nullptr);

// Random-scan sweep: |V| single-site updates at uniformly random vertices.
SpinConfig gibbs_sweep(const IsingModel& model, const SpinConfig& sigma, Rng& rng);
void gibbs_sweep_inplace(const IsingModel& model, SpinConfig& sigma, Rng& rng,
                         WorkCounter* work = nullptr);

// Iterates the chosen step function (one Gibbs step = one sweep). The
// observer, when set, sees each state read-only after its step.
using ChainObserver = std::function<void(std::int64_t step, const SpinConfig&)>;
SpinConfig run_chain(const IsingModel& model, SpinConfig sigma, std::int64_t steps,
                     ChainKind kind, Rng& rng, const ChainObserver& observer = {},
                     WorkCounter* work = nullptr);

}  // namespace swising
