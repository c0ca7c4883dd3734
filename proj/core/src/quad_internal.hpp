#pragma once

// Internal 1D integration helpers shared by the sphere/conformal/functionals
// translation units. Not installed.

#include <cmath>
#include <vector>

#include "fracsphere/errors.hpp"
#include "fracsphere/specfun.hpp"

namespace fracsphere::detail {

inline const specfun::QuadratureRule1D& gl16() {
    static const specfun::QuadratureRule1D rule = specfun::gauss_jacobi(16, 0.0);
    return rule;
}

template <typename F>
double gl_panel(F&& f, double a, double b) {
    const auto& r = gl16();
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i)
        s += r.weights[i] * f(mid + half * r.nodes[i]);
    return s * half;
}

/// Composite 16-point Gauss-Legendre with panel doubling until two
/// successive refinements agree to rel_tol.
template <typename F>
double integrate_adaptive(F&& f, double a, double b, double rel_tol = 1e-11,
                          int max_doublings = 12) {
    if (a == b) return 0.0;
    int panels = 2;
    auto composite = [&](int np) {
        const double h = (b - a) / np;
        double s = 0.0;
        for (int i = 0; i < np; ++i) s += gl_panel(f, a + i * h, a + (i + 1) * h);
        return s;
    };
    double prev = composite(panels);
    for (int d = 0; d < max_doublings; ++d) {
        panels *= 2;
        const double cur = composite(panels);
        const double err = std::abs(cur - prev);
        if (err <= rel_tol * std::max(std::abs(cur), 1e-300) || err < 1e-300) return cur;
        prev = cur;
    }
    return prev;
}

/// Geometrically graded panels toward one endpoint; handles integrable
/// algebraic/log endpoint singularities without knowing the exponent.
/// Throws QuadratureError if the panel contributions fail to decay
/// (non-integrable kernel). When min_width > 0 the grading stops once the
/// panel width falls below it and the remaining endpoint sliver is
/// estimated by geometric extrapolation of the panel contributions (exact
/// for pure power singularities); this keeps black-box integrands away
/// from the cancellation region next to the endpoint.
template <typename F>
double integrate_graded(F&& f, double a, double b, bool toward_upper,
                        double rel_tol = 1e-12, int max_panels = 300,
                        double min_width = 0.0) {
    if (a == b) return 0.0;
    const double len = b - a;
    double sum = 0.0;
    double prev_mag = -1.0, peak = 0.0;
    int quiet_streak = 0;
    for (int j = 0; j < max_panels; ++j) {
        const double hi = len * std::pow(0.5, j);
        const double lo = 0.5 * hi;
        const double pa = toward_upper ? b - hi : a + lo;
        const double pb = toward_upper ? b - lo : a + hi;
        const double contrib = gl_panel(f, pa, pb);
        const double mag = std::abs(contrib);
        // A non-integrable endpoint makes the contributions grow
        // geometrically; rebounds after interior sign cancellations stay
        // bounded by the earlier peak.
        if (j >= 2 && mag > 1e6 * peak && mag >= prev_mag && mag > 1e-290)
            throw QuadratureError(
                "integrate_graded: contributions not decaying (non-integrable?)");
        peak = std::max(peak, mag);
        sum += contrib;
        quiet_streak = (mag <= rel_tol * std::abs(sum)) ? quiet_streak + 1 : 0;
        if (quiet_streak >= 3) return sum;
        const bool at_floor = min_width > 0.0 && 0.5 * lo < min_width;
        if (at_floor || j + 1 == max_panels) {
            // Close the unresolved endpoint sliver by geometric
            // extrapolation; algebraic singularities decay with a fixed
            // ratio per halving.
            if (prev_mag > 0.0 && mag > 0.0) {
                const double r = mag / prev_mag;
                if (r >= 0.98)
                    throw QuadratureError(
                        "integrate_graded: endpoint tail not summable");
                sum += contrib * r / (1.0 - r);
            }
            return sum;
        }
        prev_mag = mag;
    }
    return sum;
}

/// Split [a,b]: graded panels into both endpoints, adaptive middle.
template <typename F>
double integrate_endpoint_graded(F&& f, double a, double b, double rel_tol = 1e-11) {
    const double m1 = a + 0.25 * (b - a);
    const double m2 = b - 0.25 * (b - a);
    return integrate_graded(f, a, m1, /*toward_upper=*/false, rel_tol * 0.1) +
           integrate_adaptive(f, m1, m2, rel_tol) +
           integrate_graded(f, m2, b, /*toward_upper=*/true, rel_tol * 0.1);
}

} // namespace fracsphere::detail
