#pragma once

#include <cstdint>

namespace swising {

// Macroscopic phase: per-side fraction of the majority spin class on a
// complete bipartite graph.
struct PhasePoint {
    double alpha_l = 0.0;
    double alpha_r = 0.0;
    friend bool operator==(const PhasePoint&, const PhasePoint&) = default;
};

// Asymptotic giant-component fractions of the percolated majority class.
struct ThetaPair {
    double theta_l = 0.0;
    double theta_r = 0.0;
};

// Jacobian of the two-dimensional map F at a phase point.
struct Jacobian2 {
    double ll = 0.0, lr = 0.0;  // dF_L/d alpha_L, dF_L/d alpha_R
    double rl = 0.0, rr = 0.0;  // dF_R/d alpha_L, dF_R/d alpha_R
};

// Coupling scale B and partition ratio k of the bipartite model where every
// edge carries beta = -(1/2) log(1 - B/(n sqrt(k))).
struct ModelScale {
    double B;
    double k;
    ModelScale(double B_, double k_);  // validates B > 0 finite, k >= 1
};

inline constexpr double kDefaultTol = 1e-12;

// Width of the subcritical guard band around sqrt(alpha_l alpha_r) B = 1;
// inside it the map is treated as subcritical (theta = 0).
inline constexpr double kCriticalBand = 1e-9;

bool is_subcritical(const PhasePoint& alpha, const ModelScale& scale);

// Solves exp(-B sqrt(k) a_R t_R) = 1 - t_L, exp(-(B/sqrt(k)) a_L t_L) = 1 - t_R
// for the unique positive root; (0,0) in the subcritical regime. Damped
// fixed-point iteration with a bisection fallback on the one-dimensional
// reduction; both residuals < tol at return.
ThetaPair solve_theta(const PhasePoint& alpha, const ModelScale& scale,
                      double tol = kDefaultTol);

// F(a_L, a_R) = ((1 + t_L a_L)/2, (1 + t_R a_R)/2).
PhasePoint f_map(const PhasePoint& alpha, const ModelScale& scale);

struct IterationResult {
    PhasePoint point;
    std::int64_t iterations = 0;
};

// Applies f_map until successive iterates differ by < tol in max-norm;
// throws (with the trajectory tail) if max_iter is exhausted.
IterationResult iterate_f(const PhasePoint& start, const ModelScale& scale, double tol,
                          std::int64_t max_iter);

// The unique fixed point of F: exactly (1/2, 1/2) for B < 2; for B > 2 the
// solution with components in (1/2, 1] of
//   exp(B sqrt(k) (1 - 2 a_R)) = (1 - a_L)/a_L,
//   exp((B/sqrt(k)) (1 - 2 a_L)) = (1 - a_R)/a_R,
// found by bisection on the one-dimensional z = 2a - 1 reduction.
// Rejects B within 1e-9 of the degenerate critical value 2.
PhasePoint fixed_point(const ModelScale& scale, double tol = kDefaultTol);

// Closed-form Jacobian of F; the zero matrix in the subcritical regime.
// Rejects evaluation inside the critical guard band (non-differentiable).
Jacobian2 jacobian_f(const PhasePoint& alpha, const ModelScale& scale);

// Largest absolute eigenvalue of a 2x2 matrix, closed form.
double spectral_radius(const Jacobian2& j);

// Exponential-order log-probability of a phase:
//   psi = -B (a_L + a_R - 2 a_L a_R) - [a_L log a_L + (1-a_L) log(1-a_L)]/sqrt(k)
//         - sqrt(k) [a_R log a_R + (1-a_R) log(1-a_R)],
// with the x log x -> 0 limit on the boundary.
double psi(const PhasePoint& alpha, const ModelScale& scale);

// Grid argmax of psi over the alpha_l >= 1/2 representative half; resolution
// is the number of grid cells per unit (>= 100).
PhasePoint argmax_psi_grid(const ModelScale& scale, std::int64_t resolution);

}  // namespace swising
