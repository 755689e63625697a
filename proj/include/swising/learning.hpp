#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "swising/samplers.hpp"

namespace swising {

// Hyperparameters of contrastive-divergence learning.
struct CDConfig {
    std::int64_t n_updates = 2000;                       // gradient updates
    std::function<double(std::int64_t)> eta;             // step size per iteration
    std::int64_t chain_steps = 1;                        // k: SW steps, or Gibbs site updates
    std::int64_t n_particles = 100;                      // persistent chains
    bool clamp_beta = true;                              // project estimates onto beta >= 0

    CDConfig() : eta([](std::int64_t) { return 0.05; }) {}
    void validate() const;
};

struct Dataset {
    std::vector<SpinConfig> samples;
};

struct ParamEstimate {
    std::vector<double> beta;
    std::vector<double> gamma;
};

struct Moments {
    std::vector<double> vertex_mean;  // mean of sigma_v
    std::vector<double> edge_mean;    // mean of sigma_u sigma_v, per edge
};

Moments empirical_moments(const Dataset& dataset, const PartitionedGraph& graph);

// Swendsen-Wang samples: burn_in steps from a uniform-random start, then one
// sample every `thin` steps.
Dataset generate_dataset(const IsingModel& model, std::int64_t n_samples,
                         std::int64_t burn_in, std::int64_t thin, Rng& rng);

struct CDTracePoint {
    std::int64_t iteration = 0;
    double field_error = 0.0;
    double coupling_error = 0.0;
};

struct CDResult {
    ParamEstimate estimate;
    std::vector<CDTracePoint> trace;  // filled when truth is supplied
    WorkCounter work;
};

// Contrastive divergence: n_particles persistent chains each advanced
// chain_steps per outer iteration under the current estimate, followed by the
// moment-matching gradient update
//   beta  += eta(i) (mu_uv_data - mu_uv_particles)
//   gamma += eta(i) (mu_v_data  - mu_v_particles).
// Estimates start at zero; particles start uniformly at random. When truth is
// given, the per-iteration error trace is recorded (instrumentation only).
// With clamp_beta off the estimate may go negative; the inner sampler always
// sees max(beta, 0), the ferromagnetic family the dynamics is defined on.
CDResult cd_learn(const Dataset& dataset, std::shared_ptr<const PartitionedGraph> graph,
                  const CDConfig& config, ChainKind kind, Rng& rng,
                  const ParamEstimate* truth = nullptr, std::int64_t trace_every = 1);

// Normalized L1 errors of Fig.-2 style: sum |gamma - gamma_hat| / |V| and
// sum |beta - beta_hat| / |E|.
double field_error(const std::vector<double>& gamma_truth,
                   const std::vector<double>& gamma_estimate);
double coupling_error(const std::vector<double>& beta_truth,
                      const std::vector<double>& beta_estimate);

}  // namespace swising
