#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "swising/graph.hpp"

namespace swising {

using Spin = std::int8_t;            // -1 or +1
using SpinConfig = std::vector<Spin>;

// Ferromagnetic Ising model: per-edge coupling beta >= 0 and per-vertex
// external field gamma (mixed signs accepted). The unnormalized distribution
// is exp(sum_E beta_uv s_u s_v + sum_V gamma_v s_v).
class IsingModel {
public:
    IsingModel(std::shared_ptr<const PartitionedGraph> graph,
               std::vector<double> beta, std::vector<double> gamma);

    static IsingModel uniform(std::shared_ptr<const PartitionedGraph> graph,
                              double beta, double gamma);

    const PartitionedGraph& graph() const { return *graph_; }
    std::shared_ptr<const PartitionedGraph> graph_ptr() const { return graph_; }
    std::int64_t num_vertices() const { return graph_->num_vertices(); }
    std::int64_t num_edges() const { return graph_->num_edges(); }
    const std::vector<double>& beta() const { return beta_; }
    const std::vector<double>& gamma() const { return gamma_; }

private:
    std::shared_ptr<const PartitionedGraph> graph_;
    std::vector<double> beta_;
    std::vector<double> gamma_;
};

// sum_E beta_uv s_u s_v + sum_V gamma_v s_v (unnormalized log-probability)
double log_weight(const IsingModel& model, const SpinConfig& sigma);

// Swendsen-Wang edge retention probability p = 1 - exp(-2 beta).
double percolation_prob(double beta);

// The uniform coupling whose percolation probability is exactly B/(n sqrt(k)):
// beta = -(1/2) log(1 - B/(n sqrt(k))).
double coupling_for_scale(double B, std::int64_t n, double k);

void throw_unless_valid(const IsingModel& model, const SpinConfig& sigma);

SpinConfig constant_config(std::int64_t n, Spin s);
SpinConfig random_config(std::int64_t n, Rng& rng);

// Pr(sigma_v = +1) = 1/(1 + exp(-t)), overflow-safe for any t.
double logistic(double t);

// Model file: the edge-list format with a third per-line column beta_uv and a
// "#gamma g0 g1 ..." header.
void save_model(const IsingModel& model, const std::string& path);
IsingModel load_model(const std::string& path);

}  // namespace swising
