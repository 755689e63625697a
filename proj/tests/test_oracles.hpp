#pragma once

// Independent reference computations for tests: kept free of the library's
// solver paths so the checks stay two-sided.

#include <cmath>
#include <cstdint>
#include <functional>
#include <queue>
#include <vector>

#include "swising/graph.hpp"
#include "swising/model.hpp"

namespace testoracle {

// Bisection on a bracketing sign change; f(lo) and f(hi) must differ in sign.
inline double bisect(const std::function<double(double)>& f, double lo, double hi,
                     int iters = 200) {
    double flo = f(lo);
    for (int i = 0; i < iters; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fmid = f(mid);
        if ((flo <= 0.0) == (fmid <= 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Positive root of exp(-c t) = 1 - t (giant-component fraction of the
// symmetric case), valid for c > 1.
inline double theta_star_symmetric(double c) {
    return bisect([c](double t) { return 1.0 - t - std::exp(-c * t); }, 1e-12, 1.0 - 1e-15);
}

// Root in (1/2, 1) of exp(B(1 - 2a)) = (1 - a)/a, the symmetric k=1 fixed
// point reduction, valid for B > 2.
inline double alpha_star_symmetric(double B) {
    return bisect(
        [B](double a) { return std::exp(B * (1.0 - 2.0 * a)) - (1.0 - a) / a; },
        0.5 + 1e-12, 1.0 - 1e-15);
}

// Breadth-first-search component labeling, canonical min-vertex ids.
inline std::vector<swising::Vertex> bfs_components(std::int64_t n,
                                                   const std::vector<swising::Edge>& edges) {
    std::vector<std::vector<swising::Vertex>> adj(n);
    for (const auto& e : edges) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    std::vector<swising::Vertex> label(n, -1);
    for (swising::Vertex s = 0; s < n; ++s) {
        if (label[s] >= 0) continue;
        std::queue<swising::Vertex> q;
        q.push(s);
        label[s] = s;
        while (!q.empty()) {
            const swising::Vertex v = q.front();
            q.pop();
            for (swising::Vertex w : adj[v]) {
                if (label[w] < 0) {
                    label[w] = s;
                    q.push(w);
                }
            }
        }
    }
    return label;
}

inline double mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

inline double sample_std(const std::vector<double>& v) {
    const double m = mean(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(v.size() > 1 ? v.size() - 1 : 1));
}

// Random model on a random simple graph: n vertices, up to max_edges distinct
// edges, beta ~ U(0, beta_hi), gamma ~ U(gamma_lo, gamma_hi).
inline swising::IsingModel random_model(std::int64_t n, std::int64_t max_edges,
                                        double beta_hi, double gamma_lo, double gamma_hi,
                                        swising::Rng& rng) {
    std::vector<swising::Edge> all;
    for (swising::Vertex u = 0; u < n; ++u)
        for (swising::Vertex v = u + 1; v < n; ++v) all.push_back({u, v});
    // Fisher-Yates prefix
    for (std::size_t i = 0; i < all.size(); ++i) {
        const std::size_t j = i + swising::uniform_below(rng, all.size() - i);
        std::swap(all[i], all[j]);
    }
    const std::int64_t m = std::min<std::int64_t>(max_edges, all.size());
    std::vector<swising::Edge> edges(all.begin(), all.begin() + m);
    auto graph = std::make_shared<swising::PartitionedGraph>(
        std::vector<std::int64_t>{n}, std::move(edges));
    std::vector<double> beta(graph->num_edges()), gamma(n);
    for (auto& b : beta) b = swising::uniform_in(rng, 0.0, beta_hi);
    for (auto& g : gamma) g = swising::uniform_in(rng, gamma_lo, gamma_hi);
    return swising::IsingModel(std::move(graph), std::move(beta), std::move(gamma));
}

// Frozen oracle values (each recomputed against its bisection oracle in the
// tests that use it).
inline constexpr double kThetaStarB2 = 0.79681213002002005;   // exp(-2t) = 1-t
inline constexpr double kAlphaStarB4 = 0.97875201203863437;   // exp(4(1-2a)) = (1-a)/a
inline constexpr double kPsiHalfHalfB1K1 = 0.88629436111989057;  // 2 log 2 - 1/2

}  // namespace testoracle
