#include "swising/samplers.hpp"

#include <cmath>
#include <stdexcept>

namespace swising {

const char* chain_name(ChainKind kind) {
    return kind == ChainKind::SwendsenWang ? "sw" : "gibbs";
}

namespace {

// Percolation into scratch.uf; retained edge indices optionally collected.
void percolate_into(const IsingModel& model, const SpinConfig& sigma, Rng& rng,
                    SwScratch& scratch, std::vector<std::int64_t>* retained,
                    WorkCounter* work) {
    const auto& edges = model.graph().edges();
    const auto& beta = model.beta();
    scratch.uf.reset(model.num_vertices());
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const double coin = uniform01(rng);  // drawn for every edge: fixed consumption
        if (sigma[edges[i].u] != sigma[edges[i].v]) continue;
        if (coin < -std::expm1(-2.0 * beta[i])) {
            scratch.uf.unite(edges[i].u, edges[i].v);
            if (retained) retained->push_back(static_cast<std::int64_t>(i));
        }
    }
    if (work) work->edge_ops += edges.size();
}

// Component gamma sums indexed by canonical component id.
void component_gamma_sums(const IsingModel& model, const std::vector<Vertex>& component_of,
                          std::vector<double>& out) {
    out.assign(model.num_vertices(), 0.0);
    const auto& gamma = model.gamma();
    for (std::size_t v = 0; v < gamma.size(); ++v) out[component_of[v]] += gamma[v];
}

// Draws one spin per component in ascending canonical id order, then paints.
void assign_spins_into(const IsingModel& model, const std::vector<Vertex>& component_of,
                       Rng& rng, SwScratch& scratch, SpinConfig& out) {
    const std::int64_t n = model.num_vertices();
    component_gamma_sums(model, component_of, scratch.component_gamma);
    scratch.component_spin.assign(n, 0);
    for (Vertex v = 0; v < n; ++v) {
        if (component_of[v] != v) continue;  // not a canonical representative
        const double p_plus = logistic(2.0 * scratch.component_gamma[v]);
        scratch.component_spin[v] = uniform01(rng) < p_plus ? Spin{1} : Spin{-1};
    }
    out.resize(n);
    for (Vertex v = 0; v < n; ++v) out[v] = scratch.component_spin[component_of[v]];
}

}  // namespace

PercolationResult sw_percolate(const IsingModel& model, const SpinConfig& sigma, Rng& rng) {
    throw_unless_valid(model, sigma);
    PercolationResult result;
    SwScratch scratch;
    percolate_into(model, sigma, rng, scratch, &result.retained_edges, nullptr);
    scratch.uf.canonical_labels(result.component_of);
    return result;
}

SpinConfig sw_assign_spins(const IsingModel& model, const PercolationResult& perc, Rng& rng) {
    if (static_cast<std::int64_t>(perc.component_of.size()) != model.num_vertices())
        throw std::invalid_argument("sw_assign_spins: percolation result size mismatch");
    SwScratch scratch;
    SpinConfig out;
    assign_spins_into(model, perc.component_of, rng, scratch, out);
    return out;
}

SpinConfig sw_step(const IsingModel& model, const SpinConfig& sigma, Rng& rng) {
    SwScratch scratch;
    SpinConfig out;
    sw_step(model, sigma, out, rng, scratch, nullptr);
    return out;
}

void sw_step(const IsingModel& model, const SpinConfig& sigma, SpinConfig& out, Rng& rng,
             SwScratch& scratch, WorkCounter* work) {
    throw_unless_valid(model, sigma);
    percolate_into(model, sigma, rng, scratch, nullptr, work);
    scratch.uf.canonical_labels(scratch.component_of);
    assign_spins_into(model, scratch.component_of, rng, scratch, out);
    if (work) work->steps += 1;
}

double gibbs_conditional_plus(const IsingModel& model, const SpinConfig& sigma, Vertex v) {
    const auto& adj = model.graph().adjacency();
    const auto& beta = model.beta();
    double field = model.gamma()[v];
    for (std::int64_t i = adj.offsets[v]; i < adj.offsets[v + 1]; ++i)
        field += beta[adj.edge_index[i]] * sigma[adj.neighbor[i]];
    return logistic(2.0 * field);
}

SpinConfig gibbs_site_update(const IsingModel& model, const SpinConfig& sigma, Vertex v,
                             Rng& rng) {
    throw_unless_valid(model, sigma);
    if (v < 0 || v >= model.num_vertices())
        throw std::invalid_argument("gibbs_site_update: vertex out of range");
    SpinConfig out = sigma;
    gibbs_site_update_inplace(model, out, v, rng, nullptr);
    return out;
}

void gibbs_site_update_inplace(const IsingModel& model, SpinConfig& sigma, Vertex v, Rng& rng,
                               WorkCounter* work) {
    const double p_plus = gibbs_conditional_plus(model, sigma, v);
    sigma[v] = uniform01(rng) < p_plus ? Spin{1} : Spin{-1};
    if (work) work->edge_ops += model.graph().degree(v);
}

SpinConfig gibbs_sweep(const IsingModel& model, const SpinConfig& sigma, Rng& rng) {
    throw_unless_valid(model, sigma);
    SpinConfig out = sigma;
    gibbs_sweep_inplace(model, out, rng, nullptr);
    return out;
}

void gibbs_sweep_inplace(const IsingModel& model, SpinConfig& sigma, Rng& rng,
                         WorkCounter* work) {
    const std::int64_t n = model.num_vertices();
    for (std::int64_t i = 0; i < n; ++i) {
        const Vertex v = static_cast<Vertex>(uniform_below(rng, n));
        gibbs_site_update_inplace(model, sigma, v, rng, work);
    }
    if (work) work->steps += 1;
}

SpinConfig run_chain(const IsingModel& model, SpinConfig sigma, std::int64_t steps,
                     ChainKind kind, Rng& rng, const ChainObserver& observer,
                     WorkCounter* work) {
    throw_unless_valid(model, sigma);
    if (kind == ChainKind::SwendsenWang) {
        SwScratch scratch;
        SpinConfig next;
        for (std::int64_t t = 0; t < steps; ++t) {
            sw_step(model, sigma, next, rng, scratch, work);
            sigma.swap(next);
            if (observer) observer(t + 1, sigma);
        }
    } else {
        for (std::int64_t t = 0; t < steps; ++t) {
            gibbs_sweep_inplace(model, sigma, rng, work);
            if (observer) observer(t + 1, sigma);
        }
    }
    return sigma;
}

}  // namespace swising
