#include "swising/learning.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace swising {

void CDConfig::validate() const {
    if (n_updates < 1 || chain_steps < 1 || n_particles < 1)
        throw std::invalid_argument("CDConfig: n_updates, chain_steps, n_particles must be >= 1");
    if (!eta) throw std::invalid_argument("CDConfig: eta schedule not set");
    // eta == 0 is admitted so the "zero step size changes nothing" invariant
    // stays expressible
    for (std::int64_t i = 0; i < n_updates; ++i)
        if (!(eta(i) >= 0.0) || !std::isfinite(eta(i)))
            throw std::invalid_argument("CDConfig: eta(i) must be finite and >= 0");
}

Moments empirical_moments(const Dataset& dataset, const PartitionedGraph& graph) {
    if (dataset.samples.empty())
        throw std::invalid_argument("empirical_moments: empty dataset");
    const std::int64_t n = graph.num_vertices();
    const auto& edges = graph.edges();
    Moments m;
    m.vertex_mean.assign(n, 0.0);
    m.edge_mean.assign(edges.size(), 0.0);
    for (const SpinConfig& sigma : dataset.samples) {
        if (static_cast<std::int64_t>(sigma.size()) != n)
            throw std::invalid_argument("empirical_moments: sample size mismatch");
        for (std::int64_t v = 0; v < n; ++v) m.vertex_mean[v] += sigma[v];
        for (std::size_t e = 0; e < edges.size(); ++e)
            m.edge_mean[e] += sigma[edges[e].u] * sigma[edges[e].v];
    }
    const double inv = 1.0 / static_cast<double>(dataset.samples.size());
    for (auto& x : m.vertex_mean) x *= inv;
    for (auto& x : m.edge_mean) x *= inv;
    return m;
}

Dataset generate_dataset(const IsingModel& model, std::int64_t n_samples,
                         std::int64_t burn_in, std::int64_t thin, Rng& rng) {
    if (n_samples < 1) throw std::invalid_argument("generate_dataset: n_samples must be >= 1");
    if (thin < 1) throw std::invalid_argument("generate_dataset: thin must be >= 1");
    SpinConfig sigma = random_config(model.num_vertices(), rng);
    SwScratch scratch;
    SpinConfig next;
    for (std::int64_t t = 0; t < burn_in; ++t) {
        sw_step(model, sigma, next, rng, scratch);
        sigma.swap(next);
    }
    Dataset data;
    data.samples.reserve(n_samples);
    data.samples.push_back(sigma);
    for (std::int64_t s = 1; s < n_samples; ++s) {
        for (std::int64_t t = 0; t < thin; ++t) {
            sw_step(model, sigma, next, rng, scratch);
            sigma.swap(next);
        }
        data.samples.push_back(sigma);
    }
    return data;
}

CDResult cd_learn(const Dataset& dataset, std::shared_ptr<const PartitionedGraph> graph,
                  const CDConfig& config, ChainKind kind, Rng& rng,
                  const ParamEstimate* truth, std::int64_t trace_every) {
    config.validate();
    if (trace_every < 1) throw std::invalid_argument("cd_learn: trace_every must be >= 1");
    const std::int64_t n = graph->num_vertices();
    const std::int64_t ne = graph->num_edges();
    const Moments data_moments = empirical_moments(dataset, *graph);
    if (truth) {
        if (static_cast<std::int64_t>(truth->beta.size()) != ne ||
            static_cast<std::int64_t>(truth->gamma.size()) != n)
            throw std::invalid_argument("cd_learn: truth dimensions mismatch");
    }

    CDResult result;
    result.estimate.beta.assign(ne, 0.0);
    result.estimate.gamma.assign(n, 0.0);

    std::vector<SpinConfig> particles(config.n_particles);
    std::vector<Rng> particle_rng;
    particle_rng.reserve(config.n_particles);
    for (std::int64_t s = 0; s < config.n_particles; ++s) {
        particles[s] = random_config(n, rng);
        particle_rng.emplace_back(rng());
    }

    const auto& edges = graph->edges();
    std::vector<double> sampler_beta(ne, 0.0);
    std::vector<double> mu_v(n), mu_e(ne);
    std::vector<SwScratch> scratch(1);
    SpinConfig next;

    for (std::int64_t i = 0; i < config.n_updates; ++i) {
        // the dynamics runs on the ferromagnetic projection of the estimate
        for (std::int64_t e = 0; e < ne; ++e)
            sampler_beta[e] = std::max(result.estimate.beta[e], 0.0);
        const IsingModel current(graph, sampler_beta, result.estimate.gamma);

        for (std::int64_t s = 0; s < config.n_particles; ++s) {
            Rng& prng = particle_rng[s];
            if (kind == ChainKind::SwendsenWang) {
                for (std::int64_t t = 0; t < config.chain_steps; ++t) {
                    sw_step(current, particles[s], next, prng, scratch[0], &result.work);
                    particles[s].swap(next);
                }
            } else {
                for (std::int64_t t = 0; t < config.chain_steps; ++t) {
                    const Vertex v = static_cast<Vertex>(uniform_below(prng, n));
                    gibbs_site_update_inplace(current, particles[s], v, prng, &result.work);
                }
            }
        }

        std::fill(mu_v.begin(), mu_v.end(), 0.0);
        std::fill(mu_e.begin(), mu_e.end(), 0.0);
        for (const SpinConfig& p : particles) {
            for (std::int64_t v = 0; v < n; ++v) mu_v[v] += p[v];
            for (std::int64_t e = 0; e < ne; ++e) mu_e[e] += p[edges[e].u] * p[edges[e].v];
        }
        const double inv = 1.0 / static_cast<double>(config.n_particles);
        const double step = config.eta(i);
        for (std::int64_t e = 0; e < ne; ++e) {
            result.estimate.beta[e] += step * (data_moments.edge_mean[e] - mu_e[e] * inv);
            if (config.clamp_beta)
                result.estimate.beta[e] = std::max(result.estimate.beta[e], 0.0);
        }
        for (std::int64_t v = 0; v < n; ++v)
            result.estimate.gamma[v] += step * (data_moments.vertex_mean[v] - mu_v[v] * inv);

        if (truth && (i % trace_every == 0 || i == config.n_updates - 1)) {
            result.trace.push_back({i, field_error(truth->gamma, result.estimate.gamma),
                                    coupling_error(truth->beta, result.estimate.beta)});
        }
    }
    return result;
}

namespace {
double normalized_l1(const std::vector<double>& a, const std::vector<double>& b,
                     const char* what) {
    if (a.size() != b.size())
        throw std::invalid_argument(std::string(what) + ": dimension mismatch");
    if (a.empty()) return 0.0;  // nothing to estimate on a degenerate draw
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) sum += std::abs(a[i] - b[i]);
    return sum / static_cast<double>(a.size());
}
}  // namespace

double field_error(const std::vector<double>& gamma_truth,
                   const std::vector<double>& gamma_estimate) {
    return normalized_l1(gamma_truth, gamma_estimate, "field_error");
}

double coupling_error(const std::vector<double>& beta_truth,
                      const std::vector<double>& beta_estimate) {
    return normalized_l1(beta_truth, beta_estimate, "coupling_error");
}

}  // namespace swising
