#include <doctest.h>

#include <cmath>

#include "swising/learning.hpp"
#include "swising/oracle.hpp"
#include "test_oracles.hpp"

using namespace swising;

namespace {

// exact sampler for tiny models (inverse CDF over the enumerated distribution)
SpinConfig exact_sample(const ExactDistribution& dist, std::int64_t n, Rng& rng) {
    const double u = uniform01(rng);
    double acc = 0.0;
    for (std::uint32_t s = 0; s < dist.probabilities.size(); ++s) {
        acc += dist.probabilities[s];
        if (u < acc) return config_from_index(s, n);
    }
    return config_from_index(static_cast<std::uint32_t>(dist.probabilities.size() - 1), n);
}

}  // namespace

TEST_CASE("empirical_moments: constant and flip-paired datasets") {
    const auto graph = std::make_shared<PartitionedGraph>(complete_bipartite(2, 2));
    Dataset ones;
    ones.samples = {SpinConfig{1, 1, 1, 1}, SpinConfig{1, 1, 1, 1}};
    const auto m1 = empirical_moments(ones, *graph);
    for (double v : m1.vertex_mean) CHECK(v == 1.0);
    for (double e : m1.edge_mean) CHECK(e == 1.0);

    Rng rng(60);
    SpinConfig sigma = random_config(4, rng);
    SpinConfig flipped = sigma;
    for (auto& s : flipped) s = -s;
    Dataset paired;
    paired.samples = {sigma, flipped};
    const auto m2 = empirical_moments(paired, *graph);
    for (double v : m2.vertex_mean) CHECK(v == 0.0);
    for (std::size_t e = 0; e < graph->edges().size(); ++e) {
        const Edge edge = graph->edges()[e];
        CHECK(m2.edge_mean[e] == static_cast<double>(sigma[edge.u] * sigma[edge.v]));
    }

    CHECK_THROWS_AS(empirical_moments(Dataset{}, *graph), std::invalid_argument);
}

TEST_CASE("generate_dataset: determinism and single-sample case") {
    Rng rng(61);
    const auto model = testoracle::random_model(6, 8, 0.8, -0.2, 0.2, rng);
    Rng a(5), b(5);
    const auto d1 = generate_dataset(model, 20, 10, 3, a);
    const auto d2 = generate_dataset(model, 20, 10, 3, b);
    CHECK(d1.samples == d2.samples);
    Rng c(6);
    CHECK(generate_dataset(model, 1, 0, 7, c).samples.size() == 1);
    Rng d(7);
    CHECK_THROWS_AS(generate_dataset(model, 0, 0, 1, d), std::invalid_argument);
}

TEST_CASE("dataset moments converge to the exact marginals") {
    Rng model_rng(62);
    auto graph = std::make_shared<PartitionedGraph>(complete_bipartite(2, 2));
    std::vector<double> beta(4), gamma(4);
    for (auto& b : beta) b = uniform_in(model_rng, 0.0, 0.8);
    for (auto& g : gamma) g = uniform_in(model_rng, -0.3, 0.3);
    const IsingModel model(graph, beta, gamma);
    const auto exact = exact_marginals(model);

    Rng rng(63);
    const std::int64_t n_samples = 30000;
    const auto data = generate_dataset(model, n_samples, 100, 4, rng);
    const auto moments = empirical_moments(data, *graph);
    for (std::int64_t v = 0; v < 4; ++v) {
        const double se =
            std::sqrt((1.0 - exact.vertex_mean[v] * exact.vertex_mean[v]) / n_samples);
        CHECK(std::abs(moments.vertex_mean[v] - exact.vertex_mean[v]) < 3.0 * se + 1e-9);
    }
    for (std::size_t e = 0; e < 4; ++e) {
        const double se = std::sqrt((1.0 - exact.edge_mean[e] * exact.edge_mean[e]) / n_samples);
        CHECK(std::abs(moments.edge_mean[e] - exact.edge_mean[e]) < 3.0 * se + 1e-9);
    }
}

TEST_CASE("cd_learn: zero step size leaves the zero estimate") {
    Rng rng(64);
    const auto model = testoracle::random_model(5, 6, 0.5, -0.1, 0.1, rng);
    const auto data = generate_dataset(model, 50, 20, 1, rng);
    CDConfig cfg;
    cfg.n_updates = 10;
    cfg.n_particles = 4;
    cfg.eta = [](std::int64_t) { return 0.0; };
    const auto result = cd_learn(data, model.graph_ptr(), cfg, ChainKind::SwendsenWang, rng);
    for (double b : result.estimate.beta) CHECK(b == 0.0);
    for (double g : result.estimate.gamma) CHECK(g == 0.0);
}

TEST_CASE("cd_learn: error traces are deterministic given the seed") {
    Rng rng(65);
    const auto model = testoracle::random_model(6, 8, 0.6, 0.0, 0.1, rng);
    const auto data = generate_dataset(model, 100, 20, 2, rng);
    ParamEstimate truth{model.beta(), model.gamma()};
    CDConfig cfg;
    cfg.n_updates = 40;
    cfg.n_particles = 10;
    auto run = [&] {
        Rng r(777);
        return cd_learn(data, model.graph_ptr(), cfg, ChainKind::Gibbs, r, &truth, 5);
    };
    const auto r1 = run();
    const auto r2 = run();
    REQUIRE(r1.trace.size() == r2.trace.size());
    CHECK(r1.trace.size() > 0);
    for (std::size_t i = 0; i < r1.trace.size(); ++i) {
        CHECK(r1.trace[i].iteration == r2.trace[i].iteration);
        CHECK(r1.trace[i].field_error == r2.trace[i].field_error);
        CHECK(r1.trace[i].coupling_error == r2.trace[i].coupling_error);
    }
}

TEST_CASE("cd_learn drives estimates toward zero on the free model") {
    // data from beta = 0, gamma = 0: the moment gradients vanish at zero
    auto graph = std::make_shared<PartitionedGraph>(complete_bipartite(5, 5));
    const IsingModel model = IsingModel::uniform(graph, 0.0, 0.0);
    std::vector<double> beta_err, gamma_err;
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        Rng rng(900 + seed);
        const auto data = generate_dataset(model, 2000, 10, 1, rng);
        CDConfig cfg;  // n_updates 2000, eta 0.05, n_particles 100
        const auto result =
            cd_learn(data, model.graph_ptr(), cfg, ChainKind::SwendsenWang, rng);
        double bmax = 0.0, gmax = 0.0;
        for (double b : result.estimate.beta) bmax = std::max(bmax, std::abs(b));
        for (double g : result.estimate.gamma) gmax = std::max(gmax, std::abs(g));
        beta_err.push_back(bmax);
        gamma_err.push_back(gmax);
    }
    CHECK(testoracle::mean(beta_err) <= 0.1);
    CHECK(testoracle::mean(gamma_err) <= 0.1);
}

TEST_CASE("exact moments make the truth a stationary point of the CD update") {
    Rng rng(66);
    const auto model = testoracle::random_model(4, 4, 0.7, -0.2, 0.2, rng);
    const auto exact = exact_marginals(model);
    const std::int64_t n = model.num_vertices();
    const auto& edges = model.graph().edges();

    // CD loop with exact data moments and an exact inner sampler, started at
    // the true parameters
    const double eta = 0.05;
    const std::int64_t iters = 1000, n_particles = 100;
    std::vector<double> beta = model.beta();
    std::vector<double> gamma = model.gamma();
    for (std::int64_t i = 0; i < iters; ++i) {
        const IsingModel current(model.graph_ptr(), beta, gamma);
        const auto dist = brute_force_distribution(current);
        std::vector<double> mu_v(n, 0.0), mu_e(edges.size(), 0.0);
        for (std::int64_t s = 0; s < n_particles; ++s) {
            const auto sigma = exact_sample(dist, n, rng);
            for (std::int64_t v = 0; v < n; ++v) mu_v[v] += sigma[v];
            for (std::size_t e = 0; e < edges.size(); ++e)
                mu_e[e] += sigma[edges[e].u] * sigma[edges[e].v];
        }
        for (std::size_t e = 0; e < edges.size(); ++e)
            beta[e] = std::max(0.0, beta[e] + eta * (exact.edge_mean[e] -
                                                     mu_e[e] / n_particles));
        for (std::int64_t v = 0; v < n; ++v)
            gamma[v] += eta * (exact.vertex_mean[v] - mu_v[v] / n_particles);
    }
    // drift bound: random-walk scale eta * sqrt(iters * Var / n_particles),
    // an upper bound since the gradient restores toward the truth
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const double var = 1.0 - exact.edge_mean[e] * exact.edge_mean[e];
        const double sigma3 = 3.0 * eta * std::sqrt(var * iters / n_particles);
        CHECK(std::abs(beta[e] - model.beta()[e]) < sigma3 + 1e-9);
    }
    for (std::int64_t v = 0; v < n; ++v) {
        const double var = 1.0 - exact.vertex_mean[v] * exact.vertex_mean[v];
        const double sigma3 = 3.0 * eta * std::sqrt(var * iters / n_particles);
        CHECK(std::abs(gamma[v] - model.gamma()[v]) < sigma3 + 1e-9);
    }
}

TEST_CASE("cd_learn work counters put k=1 SW and k=|V| Gibbs in the same regime") {
    Rng rng(67);
    GraphSpec spec;
    spec.n = 100;
    spec.alphas = {0.5, 0.5};
    spec.probs = {{0.05, 0.03}, {0.03, 0.05}};
    auto graph = std::make_shared<const PartitionedGraph>(gen_partitioned(spec, 3));
    const IsingModel model = IsingModel::uniform(graph, 0.3, 0.05);
    const auto data = generate_dataset(model, 200, 20, 1, rng);

    CDConfig sw_cfg;
    sw_cfg.n_updates = 20;
    sw_cfg.n_particles = 10;
    sw_cfg.chain_steps = 1;
    Rng r1(1);
    const auto sw = cd_learn(data, graph, sw_cfg, ChainKind::SwendsenWang, r1);

    CDConfig gibbs_cfg = sw_cfg;
    gibbs_cfg.chain_steps = graph->num_vertices();
    Rng r2(1);
    const auto gibbs = cd_learn(data, graph, gibbs_cfg, ChainKind::Gibbs, r2);

    REQUIRE(sw.work.edge_ops > 0);
    REQUIRE(gibbs.work.edge_ops > 0);
    const double ratio = static_cast<double>(gibbs.work.edge_ops) /
                         static_cast<double>(sw.work.edge_ops);
    CHECK(ratio > 0.25);
    CHECK(ratio < 8.0);
}

TEST_CASE("field_error and coupling_error are the normalized L1 distances") {
    CHECK(field_error({0.1, 0.2}, {0.1, 0.2}) == 0.0);
    CHECK(field_error({0.1, 0.2, 0.3}, {0.2, 0.3, 0.4}) == doctest::Approx(0.1).epsilon(1e-12));
    Rng rng(68);
    std::vector<double> a(10), b(10);
    for (int i = 0; i < 10; ++i) {
        a[i] = uniform_in(rng, -1.0, 1.0);
        b[i] = uniform_in(rng, -1.0, 1.0);
    }
    double direct = 0.0;
    for (int i = 0; i < 10; ++i) direct += std::abs(a[i] - b[i]);
    CHECK(coupling_error(a, b) == doctest::Approx(direct / 10.0).epsilon(1e-12));
    CHECK_THROWS_AS(coupling_error({1.0}, {1.0, 2.0}), std::invalid_argument);
}
