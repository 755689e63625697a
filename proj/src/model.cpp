#include "swising/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace swising {

IsingModel::IsingModel(std::shared_ptr<const PartitionedGraph> graph,
                       std::vector<double> beta, std::vector<double> gamma)
    : graph_(std::move(graph)), beta_(std::move(beta)), gamma_(std::move(gamma)) {
    if (!graph_) throw std::invalid_argument("IsingModel: null graph");
    if (static_cast<std::int64_t>(beta_.size()) != graph_->num_edges())
        throw std::invalid_argument("IsingModel: beta size != edge count");
    if (static_cast<std::int64_t>(gamma_.size()) != graph_->num_vertices())
        throw std::invalid_argument("IsingModel: gamma size != vertex count");
    for (double b : beta_)
        if (!(b >= 0.0) || !std::isfinite(b))
            throw std::invalid_argument("IsingModel: beta must be finite and >= 0");
}

IsingModel IsingModel::uniform(std::shared_ptr<const PartitionedGraph> graph,
                               double beta, double gamma) {
    const std::int64_t e = graph->num_edges();
    const std::int64_t n = graph->num_vertices();
    return IsingModel(std::move(graph), std::vector<double>(e, beta),
                      std::vector<double>(n, gamma));
}

double log_weight(const IsingModel& model, const SpinConfig& sigma) {
    throw_unless_valid(model, sigma);
    double w = 0.0;
    const auto& edges = model.graph().edges();
    const auto& beta = model.beta();
    for (std::size_t i = 0; i < edges.size(); ++i)
        w += beta[i] * sigma[edges[i].u] * sigma[edges[i].v];
    const auto& gamma = model.gamma();
    for (std::size_t v = 0; v < gamma.size(); ++v) w += gamma[v] * sigma[v];
    return w;
}

double percolation_prob(double beta) {
    if (!(beta >= 0.0) || !std::isfinite(beta))
        throw std::invalid_argument("percolation_prob: beta must be finite and >= 0");
    // 1 - exp(-2 beta) < 1 for finite beta; keep that true after rounding
    return std::min(-std::expm1(-2.0 * beta), std::nextafter(1.0, 0.0));
}

double coupling_for_scale(double B, std::int64_t n, double k) {
    if (!(B >= 0.0)) throw std::invalid_argument("coupling_for_scale: B must be >= 0");
    if (n < 1 || !(k > 0.0)) throw std::invalid_argument("coupling_for_scale: need n >= 1, k > 0");
    const double x = B / (static_cast<double>(n) * std::sqrt(k));
    if (x >= 1.0) throw std::invalid_argument("coupling_for_scale: B/(n sqrt(k)) must be < 1");
    return -0.5 * std::log1p(-x);
}

void throw_unless_valid(const IsingModel& model, const SpinConfig& sigma) {
    if (static_cast<std::int64_t>(sigma.size()) != model.num_vertices())
        throw std::invalid_argument("SpinConfig: length mismatch");
    for (Spin s : sigma)
        if (s != 1 && s != -1) throw std::invalid_argument("SpinConfig: spins must be +-1");
}

SpinConfig constant_config(std::int64_t n, Spin s) { return SpinConfig(n, s); }

SpinConfig random_config(std::int64_t n, Rng& rng) {
    SpinConfig sigma(n);
    for (auto& s : sigma) s = uniform01(rng) < 0.5 ? Spin{1} : Spin{-1};
    return sigma;
}

double logistic(double t) {
    if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
    const double e = std::exp(t);
    return e / (1.0 + e);
}

namespace {
std::string fmt_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}
}  // namespace

void save_model(const IsingModel& model, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_model: cannot open " + path);
    const auto& g = model.graph();
    out << "#partitions";
    for (int i = 0; i < g.num_partitions(); ++i)
        for (std::int64_t c = 0; c < g.partition_sizes()[i]; ++c) out << ' ' << i;
    out << '\n';
    out << "#gamma";
    for (double gv : model.gamma()) out << ' ' << fmt_g17(gv);
    out << '\n';
    for (std::size_t i = 0; i < g.edges().size(); ++i)
        out << g.edges()[i].u << ' ' << g.edges()[i].v << ' ' << fmt_g17(model.beta()[i])
            << '\n';
}

IsingModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_model: cannot open " + path);
    std::vector<int> partition_labels;
    std::vector<double> gamma;
    struct Row {
        Edge e;
        double beta;
    };
    std::vector<Row> rows;
    std::string line;
    std::int64_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream ls(line.substr(1));
            std::string key;
            ls >> key;
            if (key == "partitions") {
                int p;
                while (ls >> p) partition_labels.push_back(p);
            } else if (key == "gamma") {
                double gv;
                while (ls >> gv) gamma.push_back(gv);
            }
            continue;
        }
        std::istringstream ls(line);
        std::int64_t u, v;
        double b;
        if (!(ls >> u >> v >> b) || u < 0 || v < 0 || u == v)
            throw std::runtime_error("load_model: malformed line " + std::to_string(line_no) +
                                     " in " + path);
        Vertex a = static_cast<Vertex>(u), c = static_cast<Vertex>(v);
        if (a > c) std::swap(a, c);
        rows.push_back({{a, c}, b});
    }
    if (partition_labels.empty() || gamma.empty())
        throw std::runtime_error("load_model: missing #partitions or #gamma header in " + path);
    if (partition_labels.size() != gamma.size())
        throw std::runtime_error("load_model: #partitions and #gamma disagree on vertex count");
    int max_label = 0;
    for (std::size_t v = 0; v + 1 < partition_labels.size(); ++v)
        if (partition_labels[v] > partition_labels[v + 1])
            throw std::runtime_error("load_model: #partitions labels must be non-decreasing");
    for (int p : partition_labels) max_label = std::max(max_label, p);
    std::vector<std::int64_t> sizes(max_label + 1, 0);
    for (int p : partition_labels) sizes[p] += 1;

    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.e < b.e; });
    std::vector<Edge> edges;
    std::vector<double> beta;
    edges.reserve(rows.size());
    beta.reserve(rows.size());
    for (const Row& r : rows) {
        edges.push_back(r.e);
        beta.push_back(r.beta);
    }
    auto graph = std::make_shared<PartitionedGraph>(std::move(sizes), std::move(edges));
    return IsingModel(std::move(graph), std::move(beta), std::move(gamma));
}

}  // namespace swising
