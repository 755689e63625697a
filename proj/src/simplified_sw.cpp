#include "swising/simplified_sw.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace swising {

ModelScale::ModelScale(double B_, double k_) : B(B_), k(k_) {
    if (!(B > 0.0) || !std::isfinite(B))
        throw std::invalid_argument("ModelScale: B must be finite and > 0");
    if (!(k >= 1.0) || !std::isfinite(k))
        throw std::invalid_argument("ModelScale: k must be finite and >= 1");
}

namespace {

void check_phase(const PhasePoint& a) {
    if (!(a.alpha_l >= 0.0 && a.alpha_l <= 1.0 && a.alpha_r >= 0.0 && a.alpha_r <= 1.0))
        throw std::invalid_argument("PhasePoint: components must lie in [0,1]");
}

}  // namespace

bool is_subcritical(const PhasePoint& alpha, const ModelScale& scale) {
    const double crit = std::sqrt(alpha.alpha_l * alpha.alpha_r) * scale.B;
    return crit <= 1.0 + kCriticalBand;
}

ThetaPair solve_theta(const PhasePoint& alpha, const ModelScale& scale, double tol) {
    check_phase(alpha);
    if (!(tol > 0.0)) throw std::invalid_argument("solve_theta: tol must be > 0");
    if (is_subcritical(alpha, scale)) return {0.0, 0.0};

    const double sk = std::sqrt(scale.k);
    const double a = scale.B * sk * alpha.alpha_r;      // exponent scale of theta_L's equation
    const double b = (scale.B / sk) * alpha.alpha_l;    // exponent scale of theta_R's equation

    auto residuals = [&](double tl, double tr) {
        const double r1 = std::abs(std::exp(-a * tr) - (1.0 - tl));
        const double r2 = std::abs(std::exp(-b * tl) - (1.0 - tr));
        return std::max(r1, r2);
    };

    // damped iteration theta <- theta/2 + G(theta)/2
    double tl = -std::expm1(-a);
    double tr = -std::expm1(-b);
    for (int it = 0; it < 10000; ++it) {
        const double ntl = -std::expm1(-a * tr);
        const double ntr = -std::expm1(-b * tl);
        tl = 0.5 * (tl + ntl);
        tr = 0.5 * (tr + ntr);
        if (residuals(tl, tr) < tol) return {tl, tr};
    }

    // bisection fallback on the one-dimensional reduction in theta_R
    auto g = [&](double t) { return -std::expm1(-b * -std::expm1(-a * t)) - t; };
    double lo = 1e-300, hi = 1.0;
    if (!(g(lo) > 0.0)) {
        std::ostringstream msg;
        msg << "solve_theta: no supercritical bracket (residual " << residuals(tl, tr) << ")";
        throw std::runtime_error(msg.str());
    }
    for (int it = 0; it < 2000 && hi - lo > 1e-17; ++it) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) > 0.0 ? lo : hi) = mid;
    }
    tr = 0.5 * (lo + hi);
    tl = -std::expm1(-a * tr);
    if (residuals(tl, tr) >= tol) {
        std::ostringstream msg;
        msg << "solve_theta: failed to reach tol=" << tol << " (residual "
            << residuals(tl, tr) << ")";
        throw std::runtime_error(msg.str());
    }
    return {tl, tr};
}

PhasePoint f_map(const PhasePoint& alpha, const ModelScale& scale) {
    const ThetaPair t = solve_theta(alpha, scale);
    return {0.5 * (1.0 + t.theta_l * alpha.alpha_l), 0.5 * (1.0 + t.theta_r * alpha.alpha_r)};
}

IterationResult iterate_f(const PhasePoint& start, const ModelScale& scale, double tol,
                          std::int64_t max_iter) {
    check_phase(start);
    if (!(tol > 0.0)) throw std::invalid_argument("iterate_f: tol must be > 0");
    PhasePoint cur = start;
    for (std::int64_t it = 1; it <= max_iter; ++it) {
        const PhasePoint next = f_map(cur, scale);
        const double d = std::max(std::abs(next.alpha_l - cur.alpha_l),
                                  std::abs(next.alpha_r - cur.alpha_r));
        cur = next;
        if (d < tol) return {cur, it};
    }
    std::ostringstream msg;
    msg << "iterate_f: no convergence in " << max_iter << " iterations (B=" << scale.B
        << ", k=" << scale.k << "); tail:";
    PhasePoint tail = cur;
    for (int i = 0; i < 4; ++i) {
        msg << " (" << tail.alpha_l << "," << tail.alpha_r << ")";
        tail = f_map(tail, scale);
    }
    throw std::runtime_error(msg.str());
}

PhasePoint fixed_point(const ModelScale& scale, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("fixed_point: tol must be > 0");
    if (std::abs(scale.B - 2.0) < 1e-9)
        throw std::invalid_argument(
            "fixed_point: B is within 1e-9 of the critical value 2; the fixed point is "
            "degenerate there");
    if (scale.B < 2.0) return {0.5, 0.5};

    const double sk = std::sqrt(scale.k);
    // Parametrize by y = log((1+z_L)/(1-z_L)), so z_L = tanh(y/2) and the
    // first equation gives z_R = y/(B sqrt(k)) exactly. The remaining one,
    //   tanh(y/2) = (sqrt(k)/B) log((1+z_R)/(1-z_R)),
    // has a single sign change on y in (0, B sqrt(k)).
    auto log_odds = [](double z) { return std::log1p(2.0 * z / (1.0 - z)); };
    auto q = [&](double y) {
        const double zr = y / (scale.B * sk);
        return (sk / scale.B) * log_odds(zr) - std::tanh(0.5 * y);
    };
    double lo = 1e-14;
    double hi = scale.B * sk * (1.0 - 1e-13);
    if (!(q(lo) < 0.0 && q(hi) > 0.0))
        throw std::runtime_error("fixed_point: bracket failure (B out of solvable range)");
    for (int it = 0; it < 500 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        (q(mid) < 0.0 ? lo : hi) = mid;
    }
    const double y = 0.5 * (lo + hi);
    const double zl = std::tanh(0.5 * y);
    const double zr = y / (scale.B * sk);
    const PhasePoint fp{0.5 * (1.0 + zl), 0.5 * (1.0 + zr)};

    const double res1 =
        std::abs(std::exp(scale.B * sk * (1.0 - 2.0 * fp.alpha_r)) -
                 (1.0 - fp.alpha_l) / fp.alpha_l);
    const double res2 =
        std::abs(std::exp((scale.B / sk) * (1.0 - 2.0 * fp.alpha_l)) -
                 (1.0 - fp.alpha_r) / fp.alpha_r);
    if (std::max(res1, res2) >= tol) {
        std::ostringstream msg;
        msg << "fixed_point: residuals " << res1 << ", " << res2 << " exceed tol=" << tol;
        throw std::runtime_error(msg.str());
    }
    return fp;
}

Jacobian2 jacobian_f(const PhasePoint& alpha, const ModelScale& scale) {
    check_phase(alpha);
    const double crit = std::sqrt(alpha.alpha_l * alpha.alpha_r) * scale.B;
    if (std::abs(crit - 1.0) < kCriticalBand)
        throw std::invalid_argument("jacobian_f: F is not differentiable at criticality");
    if (crit < 1.0) return {};  // zero matrix

    const ThetaPair t = solve_theta(alpha, scale);
    const double sk = std::sqrt(scale.k);
    const double denom = 1.0 - (1.0 - t.theta_l) * (1.0 - t.theta_r) * scale.B * scale.B *
                                   alpha.alpha_l * alpha.alpha_r;
    const double c = 0.5 / denom;
    Jacobian2 j;
    j.ll = c * t.theta_l;
    j.lr = c * (1.0 - t.theta_l) * t.theta_r * scale.B * sk * alpha.alpha_l;
    j.rl = c * (1.0 - t.theta_r) * t.theta_l * scale.B * alpha.alpha_r / sk;
    j.rr = c * t.theta_r;
    return j;
}

double spectral_radius(const Jacobian2& j) {
    const double trace = j.ll + j.rr;
    const double det = j.ll * j.rr - j.lr * j.rl;
    const double disc = trace * trace - 4.0 * det;
    if (disc >= 0.0) {
        const double root = std::sqrt(disc);
        return std::max(std::abs(0.5 * (trace + root)), std::abs(0.5 * (trace - root)));
    }
    return std::sqrt(det);  // complex pair: |lambda|^2 = det
}

namespace {
double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }
}  // namespace

double psi(const PhasePoint& alpha, const ModelScale& scale) {
    check_phase(alpha);
    const double sk = std::sqrt(scale.k);
    const double al = alpha.alpha_l, ar = alpha.alpha_r;
    return -scale.B * (al + ar - 2.0 * al * ar) -
           (xlogx(al) + xlogx(1.0 - al)) / sk -
           sk * (xlogx(ar) + xlogx(1.0 - ar));
}

PhasePoint argmax_psi_grid(const ModelScale& scale, std::int64_t resolution) {
    if (resolution < 100)
        throw std::invalid_argument("argmax_psi_grid: resolution must be >= 100");
    PhasePoint best{0.5, 0.5};
    double best_val = psi(best, scale);
    const double step = 1.0 / static_cast<double>(resolution);
    for (std::int64_t i = resolution / 2; i <= resolution; ++i) {
        const double al = static_cast<double>(i) * step;
        for (std::int64_t jj = 0; jj <= resolution; ++jj) {
            const double ar = static_cast<double>(jj) * step;
            const double val = psi({al, ar}, scale);
            if (val > best_val) {
                best_val = val;
                best = {al, ar};
            }
        }
    }
    return best;
}

}  // namespace swising
