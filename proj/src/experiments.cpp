#include "swising/experiments.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace swising {

using nlohmann::json;

namespace {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

json deep_merge(json base, const json& user) {
    if (!user.is_object() || !base.is_object()) return user;
    for (auto it = user.begin(); it != user.end(); ++it) {
        if (base.contains(it.key()))
            base[it.key()] = deep_merge(base[it.key()], it.value());
        else
            base[it.key()] = it.value();
    }
    return base;
}

std::ofstream open_output(const CliOptions& opts, const std::string& name,
                          const std::string& subcommand, const json& effective_cfg,
                          std::uint64_t seed) {
    namespace fs = std::filesystem;
    fs::create_directories(opts.out_dir);
    const std::string path = (fs::path(opts.out_dir) / name).string();
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file " + path);
    out << "# swising " << subcommand << '\n';
    out << "# config " << effective_cfg.dump() << '\n';
    out << "# root_seed " << seed << '\n';
    return out;
}

// indexed parallel map with deterministic result order
void parallel_for(std::int64_t count, int jobs, const std::function<void(std::int64_t)>& fn) {
    if (jobs <= 1 || count <= 1) {
        for (std::int64_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::int64_t> next{0};
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
    auto worker = [&] {
        while (true) {
            const std::int64_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    const int n_threads = std::min<std::int64_t>(jobs, count);
    pool.reserve(n_threads);
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

std::vector<double> draw_params(const json& node, std::size_t count, Rng& rng) {
    std::vector<double> out(count);
    for (auto& x : out) x = draw_param(node, rng);
    return out;
}

ChainKind parse_chain(const std::string& name) {
    if (name == "sw") return ChainKind::SwendsenWang;
    if (name == "gibbs") return ChainKind::Gibbs;
    throw std::invalid_argument("unknown chain kind: " + name + " (expected sw|gibbs)");
}

CDConfig cd_config_from(const json& node, std::int64_t chain_steps) {
    CDConfig cfg;
    cfg.n_updates = node.value("n_updates", std::int64_t{2000});
    cfg.n_particles = node.value("n_particles", std::int64_t{100});
    cfg.clamp_beta = node.value("clamp_beta", true);
    const double eta = node.value("eta", 0.05);
    cfg.eta = [eta](std::int64_t) { return eta; };
    cfg.chain_steps = chain_steps;
    return cfg;
}

std::int64_t chain_steps_for(const json& cd_node, ChainKind kind, std::int64_t n_vertices) {
    if (kind == ChainKind::SwendsenWang) return cd_node.value("k_sw", std::int64_t{1});
    return cd_node.value("k_gibbs", n_vertices);  // the k = |V| convention
}

}  // namespace

PartitionedGraph build_graph(const json& node, std::uint64_t seed) {
    if (node.contains("file")) return load_edge_list(node["file"].get<std::string>());
    if (node.contains("complete_bipartite")) {
        const auto sizes = node["complete_bipartite"].get<std::vector<std::int64_t>>();
        if (sizes.size() != 2)
            throw std::invalid_argument("graph.complete_bipartite: expected [n, m]");
        return complete_bipartite(sizes[0], sizes[1]);
    }
    GraphSpec spec;
    spec.n = node.at("n").get<std::int64_t>();
    spec.alphas = node.at("alphas").get<std::vector<double>>();
    spec.probs = node.at("probs").get<std::vector<std::vector<double>>>();
    return gen_partitioned(spec, seed);
}

double draw_param(const json& node, Rng& rng) {
    if (node.is_number()) return node.get<double>();
    const std::string dist = node.at("dist").get<std::string>();
    if (dist == "uniform")
        return uniform_in(rng, node.at("lo").get<double>(), node.at("hi").get<double>());
    throw std::invalid_argument("unknown distribution: " + dist);
}

int cmd_generate(const json& user_cfg, const CliOptions& opts) {
    const json cfg = deep_merge(json{{"output", "graph.txt"}}, user_cfg);
    const PartitionedGraph g = build_graph(cfg.at("graph"), derive_seed(opts.seed, 0));
    namespace fs = std::filesystem;
    fs::create_directories(opts.out_dir);
    const std::string path = (fs::path(opts.out_dir) / cfg["output"].get<std::string>()).string();
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file " + path);
    out << "# swising generate\n# config " << cfg.dump() << "\n# root_seed " << opts.seed
        << '\n';
    out << serialize_edge_list(g);
    std::cout << "vertices " << g.num_vertices() << " edges " << g.num_edges() << '\n';
    return 0;
}

int cmd_sample(const json& user_cfg, const CliOptions& opts) {
    const json defaults{{"chain", "sw"},          {"steps", 1000},
                        {"burn_in", 0},           {"record_every", 1},
                        {"output_summary", "sample.csv"}};
    const json cfg = deep_merge(defaults, user_cfg);
    auto graph =
        std::make_shared<const PartitionedGraph>(build_graph(cfg.at("graph"), derive_seed(opts.seed, 0)));
    Rng param_rng(derive_seed(opts.seed, 1));
    const IsingModel model(graph,
                           draw_params(cfg.at("model").at("beta"), graph->num_edges(), param_rng),
                           draw_params(cfg.at("model").at("gamma"), graph->num_vertices(), param_rng));
    const ChainKind kind = parse_chain(cfg["chain"].get<std::string>());
    const std::int64_t steps = cfg["steps"].get<std::int64_t>();
    const std::int64_t burn_in = cfg["burn_in"].get<std::int64_t>();
    const std::int64_t record_every = cfg["record_every"].get<std::int64_t>();

    std::ofstream summary = open_output(opts, cfg["output_summary"].get<std::string>(),
                                        "sample", cfg, opts.seed);
    summary << "step,magnetization";
    for (int i = 0; i < graph->num_partitions(); ++i) summary << ",alpha_" << i;
    summary << '\n';

    std::ofstream samples_out;
    const bool keep_samples = cfg.contains("output_samples");
    if (keep_samples) {
        samples_out = open_output(opts, cfg["output_samples"].get<std::string>(), "sample",
                                  cfg, opts.seed);
    }

    Rng chain_rng(derive_seed(opts.seed, 2));
    SpinConfig sigma = random_config(graph->num_vertices(), chain_rng);
    sigma = run_chain(model, std::move(sigma), burn_in, kind, chain_rng);

    auto emit = [&](std::int64_t step, const SpinConfig& s) {
        summary << step << ',' << fmt(magnetization(s));
        for (double a : phase(s, *graph)) summary << ',' << fmt(a);
        summary << '\n';
        if (keep_samples) {
            for (std::size_t v = 0; v < s.size(); ++v)
                samples_out << (v ? " " : "") << static_cast<int>(s[v]);
            samples_out << '\n';
        }
    };
    emit(0, sigma);
    run_chain(model, sigma, steps, kind, chain_rng,
              [&](std::int64_t step, const SpinConfig& s) {
                  if (step % record_every == 0) emit(step, s);
              });
    return 0;
}

int cmd_mix(const json& user_cfg, const CliOptions& opts) {
    const json defaults{{"sizes", json::array({50, 100, 200, 400})},
                        {"k", 1.0},
                        {"B", 4.0},
                        {"chains", json::array({"sw"})},
                        {"seeds", 20},
                        {"max_steps", 10000},
                        {"y_start", "mirror"},
                        {"output", "mix.csv"}};
    const json cfg = deep_merge(defaults, user_cfg);
    const auto sizes = cfg["sizes"].get<std::vector<std::int64_t>>();
    const double k = cfg["k"].get<double>();
    const double B = cfg["B"].get<double>();
    const std::int64_t n_seeds = cfg["seeds"].get<std::int64_t>();
    const std::int64_t max_steps = cfg["max_steps"].get<std::int64_t>();
    const auto chain_names = cfg["chains"].get<std::vector<std::string>>();
    // "mirror" couples all-(+1) against all-(-1); "checkerboard" couples
    // all-(+1) against an alternating start, where the SW coupling has real
    // work to do (mirror pairs share their monochromatic edge set and meet in
    // one step)
    const std::string y_start = cfg["y_start"].get<std::string>();
    if (y_start != "mirror" && y_start != "checkerboard")
        throw std::invalid_argument("mix.y_start must be mirror|checkerboard");

    struct Row {
        std::int64_t n, seed, steps;
        std::string chain;
        bool censored;
    };
    const std::int64_t points =
        static_cast<std::int64_t>(sizes.size()) * chain_names.size() * n_seeds;
    std::vector<Row> rows(points);
    parallel_for(points, opts.jobs, [&](std::int64_t idx) {
        const std::int64_t per_size = static_cast<std::int64_t>(chain_names.size()) * n_seeds;
        const std::int64_t n = sizes[idx / per_size];
        const std::int64_t rem = idx % per_size;
        const std::string chain = chain_names[rem / n_seeds];
        const std::int64_t seed_idx = rem % n_seeds;

        const std::int64_t m = static_cast<std::int64_t>(std::llround(k * static_cast<double>(n)));
        auto graph = std::make_shared<const PartitionedGraph>(complete_bipartite(n, m));
        const IsingModel model =
            IsingModel::uniform(graph, coupling_for_scale(B, n, k), 0.0);
        if (y_start == "mirror") {
            const auto report = coalescence_time(model, derive_seed(opts.seed, idx), max_steps,
                                                 parse_chain(chain));
            rows[idx] = {n, seed_idx, report.steps, chain, report.censored};
        } else {
            CoupledChains chains(model, parse_chain(chain), derive_seed(opts.seed, idx));
            for (std::int64_t v = 0; v < n + m; ++v)
                chains.y[v] = v % 2 == 0 ? Spin{1} : Spin{-1};
            std::int64_t steps = max_steps;
            bool censored = true;
            for (std::int64_t t = 1; t <= max_steps; ++t) {
                chains.step();
                if (chains.equal()) {
                    steps = t;
                    censored = false;
                    break;
                }
            }
            rows[idx] = {n, seed_idx, steps, chain, censored};
        }
    });

    std::ofstream out = open_output(opts, cfg["output"].get<std::string>(), "mix", cfg,
                                    opts.seed);
    out << "n,k,B,chain,seed,steps,censored\n";
    for (const Row& r : rows)
        out << r.n << ',' << fmt(k) << ',' << fmt(B) << ',' << r.chain << ',' << r.seed << ','
            << r.steps << ',' << (r.censored ? 1 : 0) << '\n';
    return 0;
}

int cmd_fixedpoint(const json& user_cfg, const CliOptions& opts) {
    const json defaults{{"B_values", json::array({0.5, 1.0, 1.5, 2.5, 3.0, 4.0, 8.0})},
                        {"k_values", json::array({1.0, 2.0, 5.0})},
                        {"tol", 1e-12},
                        {"output", "fixedpoint.csv"}};
    const json cfg = deep_merge(defaults, user_cfg);
    const auto b_values = cfg["B_values"].get<std::vector<double>>();
    const auto k_values = cfg["k_values"].get<std::vector<double>>();
    const double tol = cfg["tol"].get<double>();

    std::ofstream out = open_output(opts, cfg["output"].get<std::string>(), "fixedpoint", cfg,
                                    opts.seed);
    out << "B,k,alpha_L_star,alpha_R_star,theta_L,theta_R,spectral_radius,residual\n";
    for (double k : k_values) {
        for (double B : b_values) {
            const ModelScale scale(B, k);
            const PhasePoint fp = fixed_point(scale, tol);
            const ThetaPair theta = solve_theta(fp, scale, tol);
            const double rho = spectral_radius(jacobian_f(fp, scale));
            const double sk = std::sqrt(k);
            const double res1 = std::abs(std::exp(B * sk * (1.0 - 2.0 * fp.alpha_r)) -
                                         (1.0 - fp.alpha_l) / fp.alpha_l);
            const double res2 = std::abs(std::exp((B / sk) * (1.0 - 2.0 * fp.alpha_l)) -
                                         (1.0 - fp.alpha_r) / fp.alpha_r);
            out << fmt(B) << ',' << fmt(k) << ',' << fmt(fp.alpha_l) << ',' << fmt(fp.alpha_r)
                << ',' << fmt(theta.theta_l) << ',' << fmt(theta.theta_r) << ',' << fmt(rho)
                << ',' << fmt(std::max(res1, res2)) << '\n';
        }
    }
    return 0;
}

namespace {

struct LearnRun {
    ParamEstimate truth;
    CDResult result;
};

LearnRun run_learning_once(std::shared_ptr<const PartitionedGraph> graph, const json& model_cfg,
                           const json& cd_node, std::int64_t n_samples, std::int64_t burn_in,
                           std::int64_t thin, ChainKind kind, std::uint64_t seed,
                           std::int64_t trace_every) {
    Rng param_rng(derive_seed(seed, 101));
    LearnRun run;
    run.truth.beta = draw_params(model_cfg.at("beta"), graph->num_edges(), param_rng);
    run.truth.gamma = draw_params(model_cfg.at("gamma"), graph->num_vertices(), param_rng);
    const IsingModel model(graph, run.truth.beta, run.truth.gamma);

    Rng data_rng(derive_seed(seed, 102));
    const Dataset data = generate_dataset(model, n_samples, burn_in, thin, data_rng);

    const CDConfig cd = cd_config_from(cd_node, chain_steps_for(cd_node, kind,
                                                                graph->num_vertices()));
    Rng learn_rng(derive_seed(seed, 103));
    run.result = cd_learn(data, graph, cd, kind, learn_rng, &run.truth, trace_every);
    return run;
}

}  // namespace

int cmd_learn(const json& user_cfg, const CliOptions& opts) {
    const json defaults{{"samples", 1000},
                        {"burn_in", 200},
                        {"thin", 5},
                        {"cd", json::object()},
                        {"chains", json::array({"sw", "gibbs"})},
                        {"trace_every", 10},
                        {"output", "learn_trace.csv"}};
    const json cfg = deep_merge(defaults, user_cfg);
    auto graph = std::make_shared<const PartitionedGraph>(
        build_graph(cfg.at("graph"), derive_seed(opts.seed, 0)));
    const auto chain_names = cfg["chains"].get<std::vector<std::string>>();

    std::vector<LearnRun> runs(chain_names.size());
    parallel_for(static_cast<std::int64_t>(chain_names.size()), opts.jobs, [&](std::int64_t c) {
        runs[c] = run_learning_once(graph, cfg.at("model"), cfg["cd"],
                                    cfg["samples"].get<std::int64_t>(),
                                    cfg["burn_in"].get<std::int64_t>(),
                                    cfg["thin"].get<std::int64_t>(),
                                    parse_chain(chain_names[c]), derive_seed(opts.seed, c),
                                    cfg["trace_every"].get<std::int64_t>());
    });

    std::ofstream out = open_output(opts, cfg["output"].get<std::string>(), "learn", cfg,
                                    opts.seed);
    out << "iteration,field_error,coupling_error,chain,seed\n";
    for (std::size_t c = 0; c < chain_names.size(); ++c)
        for (const CDTracePoint& p : runs[c].result.trace)
            out << p.iteration << ',' << fmt(p.field_error) << ',' << fmt(p.coupling_error)
                << ',' << chain_names[c] << ',' << opts.seed << '\n';
    return 0;
}

int cmd_reproduce(const json& user_cfg, const CliOptions& opts) {
    const json defaults{{"mode", "beta_range"},
                        {"x_values", json::array({0.25, 0.5, 1.0})},
                        {"n", 200},
                        {"max_n", 400},
                        {"alphas", json::array({0.5, 0.5})},
                        {"probs", json::array({json::array({0.007, 0.003}),
                                               json::array({0.003, 0.007})})},
                        {"beta_hi", 1.0},
                        {"gamma", json{{"dist", "uniform"}, {"lo", 0.0}, {"hi", 0.1}}},
                        {"models_per_point", 10},
                        {"samples", 1000},
                        {"burn_in", 200},
                        {"thin", 5},
                        {"cd", json::object()},
                        {"chains", json::array({"sw", "gibbs"})},
                        {"output_detail", "reproduce_detail.csv"},
                        {"output_summary", "reproduce_summary.csv"}};
    const json cfg = deep_merge(defaults, user_cfg);
    const std::string mode = cfg["mode"].get<std::string>();
    if (mode != "beta_range" && mode != "graph_size")
        throw std::invalid_argument("reproduce.mode must be beta_range|graph_size");
    const auto x_values = cfg["x_values"].get<std::vector<double>>();
    const std::int64_t models_per_point = cfg["models_per_point"].get<std::int64_t>();
    const auto chain_names = cfg["chains"].get<std::vector<std::string>>();
    const std::int64_t max_n = cfg["max_n"].get<std::int64_t>();

    struct Cell {
        bool ok = false;
        std::string error;
        double field_err = 0.0, coupling_err = 0.0;
    };
    const std::int64_t n_chains = static_cast<std::int64_t>(chain_names.size());
    const std::int64_t cells =
        static_cast<std::int64_t>(x_values.size()) * models_per_point * n_chains;
    std::vector<Cell> grid(cells);

    parallel_for(cells, opts.jobs, [&](std::int64_t idx) {
        Cell& cell = grid[idx];
        const std::int64_t per_x = models_per_point * n_chains;
        const std::size_t xi = static_cast<std::size_t>(idx / per_x);
        const std::int64_t model_idx = (idx % per_x) / n_chains;
        const std::int64_t ci = idx % n_chains;
        try {
            const double x = x_values[xi];
            std::int64_t n = cfg["n"].get<std::int64_t>();
            double beta_hi = cfg["beta_hi"].get<double>();
            if (mode == "graph_size")
                n = static_cast<std::int64_t>(std::llround(x));
            else
                beta_hi = x;
            if (n > max_n)
                throw std::invalid_argument("n exceeds the desk-scale cap max_n=" +
                                            std::to_string(max_n) + "; raise max_n to allow");

            // one seed per (x, model): the graph and the true parameters are
            // shared by the chains being compared
            const std::uint64_t model_seed =
                derive_seed(opts.seed, xi * models_per_point + model_idx);
            json graph_node;
            if (cfg.contains("graph"))
                graph_node = cfg["graph"];
            else
                graph_node = json{{"n", n}, {"alphas", cfg["alphas"]}, {"probs", cfg["probs"]}};
            auto graph = std::make_shared<const PartitionedGraph>(
                build_graph(graph_node, derive_seed(model_seed, 100)));

            const json model_cfg{
                {"beta", json{{"dist", "uniform"}, {"lo", 0.0}, {"hi", beta_hi}}},
                {"gamma", cfg["gamma"]}};
            const LearnRun run = run_learning_once(
                graph, model_cfg, cfg["cd"], cfg["samples"].get<std::int64_t>(),
                cfg["burn_in"].get<std::int64_t>(), cfg["thin"].get<std::int64_t>(),
                parse_chain(chain_names[ci]), derive_seed(model_seed, 200 + ci),
                std::max<std::int64_t>(1, cfg["cd"].value("n_updates", std::int64_t{2000})));
            cell.field_err = field_error(run.truth.gamma, run.result.estimate.gamma);
            cell.coupling_err = coupling_error(run.truth.beta, run.result.estimate.beta);
            cell.ok = true;
        } catch (const std::exception& e) {
            cell.error = e.what();
        }
    });

    std::ofstream detail =
        open_output(opts, cfg["output_detail"].get<std::string>(), "reproduce", cfg, opts.seed);
    detail << "mode,x,model,chain,status,field_error,coupling_error\n";
    bool all_ok = true;
    for (std::int64_t idx = 0; idx < cells; ++idx) {
        const std::int64_t per_x = models_per_point * n_chains;
        const std::size_t xi = static_cast<std::size_t>(idx / per_x);
        const std::int64_t model_idx = (idx % per_x) / n_chains;
        const std::int64_t ci = idx % n_chains;
        const Cell& cell = grid[idx];
        all_ok = all_ok && cell.ok;
        detail << mode << ',' << fmt(x_values[xi]) << ',' << model_idx << ','
               << chain_names[ci] << ',' << (cell.ok ? "ok" : "failed") << ','
               << fmt(cell.field_err) << ',' << fmt(cell.coupling_err) << '\n';
    }

    std::ofstream summary =
        open_output(opts, cfg["output_summary"].get<std::string>(), "reproduce", cfg,
                    opts.seed);
    summary << "mode,x,chain,models,mean_field_error,std_field_error,mean_coupling_error,"
               "std_coupling_error\n";
    for (std::size_t xi = 0; xi < x_values.size(); ++xi) {
        for (std::int64_t ci = 0; ci < n_chains; ++ci) {
            std::vector<double> fe, ce;
            for (std::int64_t m = 0; m < models_per_point; ++m) {
                const std::int64_t idx =
                    (static_cast<std::int64_t>(xi) * models_per_point + m) * n_chains + ci;
                if (grid[idx].ok) {
                    fe.push_back(grid[idx].field_err);
                    ce.push_back(grid[idx].coupling_err);
                }
            }
            auto mean_std = [](const std::vector<double>& v) {
                if (v.empty()) return std::pair<double, double>{0.0, 0.0};
                double mean = 0.0;
                for (double x : v) mean += x;
                mean /= static_cast<double>(v.size());
                double var = 0.0;
                for (double x : v) var += (x - mean) * (x - mean);
                var /= static_cast<double>(v.size());
                return std::pair<double, double>{mean, std::sqrt(var)};
            };
            const auto [fm, fs] = mean_std(fe);
            const auto [cm, cs] = mean_std(ce);
            summary << mode << ',' << fmt(x_values[xi]) << ',' << chain_names[ci] << ','
                    << fe.size() << ',' << fmt(fm) << ',' << fmt(fs) << ',' << fmt(cm) << ','
                    << fmt(cs) << '\n';
        }
    }
    return all_ok ? 0 : 1;
}

}  // namespace swising
