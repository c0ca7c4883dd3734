#include "fracsphere/specfun.hpp"

#include <cmath>
#include <stdexcept>

namespace fracsphere::specfun {

namespace {

// Lanczos g = 7, 9-term coefficient set (Godfrey/Pugh). Gives close to
// full double precision for real x >= 0.5; smaller x go through the
// reflection-free shift below since we only admit x > 0.
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

double lanczos_log_gamma(double x) {
    // Valid for x >= 0.5.
    double acc = kLanczos[0];
    for (int i = 1; i < 9; ++i) acc += kLanczos[i] / (x - 1.0 + i);
    const double t = x + kLanczosG - 0.5;
    return 0.5 * std::log(2.0 * M_PI) + (x - 0.5) * std::log(t) - t + std::log(acc);
}

} // namespace

double log_gamma(double x) {
    if (!(x > 0.0)) throw std::domain_error("log_gamma: requires x > 0");
    if (x >= 0.5) return lanczos_log_gamma(x);
    // Gamma(x) = Gamma(x+1)/x keeps the Lanczos argument in its sweet spot.
    return lanczos_log_gamma(x + 1.0) - std::log(x);
}

double gamma_ratio(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw std::domain_error("gamma_ratio: requires a, b > 0");
    const double d = a - b;
    const double dr = std::round(d);
    if (std::abs(d - dr) < 1e-12 && std::abs(dr) <= 64.0) {
        // Gamma(b + m)/Gamma(b) = b (b+1) ... (b+m-1)
        const int m = static_cast<int>(std::abs(dr));
        const double lo = (dr >= 0.0) ? b : a;
        double prod = 1.0;
        for (int i = 0; i < m; ++i) prod *= lo + i;
        return (dr >= 0.0) ? prod : 1.0 / prod;
    }
    return std::exp(log_gamma(a) - log_gamma(b));
}

double gegenbauer(int k, double alpha, double t) {
    if (k < 0) throw std::domain_error("gegenbauer: k >= 0");
    if (std::abs(t) > 1.0 + 1e-12) throw std::domain_error("gegenbauer: |t| <= 1");
    if (alpha == 0.0) {
        // Chebyshev convention for the degenerate weight.
        if (k == 0) return 1.0;
        double pm2 = 1.0, pm1 = t;
        for (int j = 2; j <= k; ++j) {
            const double p = 2.0 * t * pm1 - pm2;
            pm2 = pm1;
            pm1 = p;
        }
        return (k == 1) ? t : pm1;
    }
    if (!(alpha > -0.5)) throw std::domain_error("gegenbauer: alpha > -1/2");
    if (k == 0) return 1.0;
    double pm2 = 1.0, pm1 = 2.0 * alpha * t;
    for (int j = 2; j <= k; ++j) {
        const double p = (2.0 * (j + alpha - 1.0) * t * pm1 - (j + 2.0 * alpha - 2.0) * pm2) / j;
        pm2 = pm1;
        pm1 = p;
    }
    return (k == 1) ? 2.0 * alpha * t : pm1;
}

namespace {

// Squared weighted L2 norm of C_k^nu against (1-t^2)^(nu-1/2):
//   h_k = pi 2^(1-2nu) Gamma(k+2nu) / (k! (k+nu) Gamma(nu)^2).
// Successive ratios keep the recurrence coefficients well scaled.
double gegenbauer_norm0(double nu) {
    // h_0 = sqrt(pi) Gamma(nu+1/2) / Gamma(nu+1)
    return std::sqrt(M_PI) * gamma_ratio(nu + 0.5, nu + 1.0);
}

inline double h_ratio(int k, double nu) {
    // h_k / h_{k-1}
    return (k + 2.0 * nu - 1.0) / k * (k + nu - 1.0) / (k + nu);
}

// Orthonormal recurrence p_k = A_k t p_{k-1} - B_k p_{k-2}.
struct NormalizedRecurrence {
    double nu;
    double p0;
    explicit NormalizedRecurrence(double nu_) : nu(nu_), p0(1.0 / std::sqrt(gegenbauer_norm0(nu_))) {}
    double A(int k) const { return 2.0 * (k + nu - 1.0) / k / std::sqrt(h_ratio(k, nu)); }
    double B(int k) const {
        return (k + 2.0 * nu - 2.0) / k / std::sqrt(h_ratio(k, nu) * h_ratio(k - 1, nu));
    }
};

} // namespace

double gegenbauer_normalized(int k, double nu, double t) {
    if (k < 0) throw std::domain_error("gegenbauer_normalized: k >= 0");
    if (!(nu > 0.0)) throw std::domain_error("gegenbauer_normalized: nu > 0");
    const NormalizedRecurrence rec(nu);
    double pm1 = rec.p0, pm2 = 0.0;
    for (int j = 1; j <= k; ++j) {
        const double p = rec.A(j) * t * pm1 - ((j >= 2) ? rec.B(j) * pm2 : 0.0);
        pm2 = pm1;
        pm1 = p;
    }
    return pm1;
}

void gegenbauer_normalized_all(int kmax, double nu, double t, double* out) {
    const NormalizedRecurrence rec(nu);
    double pm1 = rec.p0, pm2 = 0.0;
    out[0] = pm1;
    for (int j = 1; j <= kmax; ++j) {
        const double p = rec.A(j) * t * pm1 - ((j >= 2) ? rec.B(j) * pm2 : 0.0);
        pm2 = pm1;
        pm1 = p;
        out[j] = p;
    }
}

void gegenbauer_normalized_deriv_all(int kmax, double nu, double t, double* out, double* dout) {
    const NormalizedRecurrence rec(nu);
    double pm1 = rec.p0, pm2 = 0.0, dm1 = 0.0, dm2 = 0.0;
    out[0] = pm1;
    dout[0] = 0.0;
    for (int j = 1; j <= kmax; ++j) {
        const double A = rec.A(j);
        const double B = (j >= 2) ? rec.B(j) : 0.0;
        const double p = A * t * pm1 - B * pm2;
        const double d = A * (pm1 + t * dm1) - B * dm2;
        pm2 = pm1;
        pm1 = p;
        dm2 = dm1;
        dm1 = d;
        out[j] = p;
        dout[j] = d;
    }
}

double QuadratureRule1D::total_weight() const {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
}

double QuadratureRule1D::weight_integral(double alpha) {
    return std::sqrt(M_PI) * std::exp(log_gamma(alpha + 1.0) - log_gamma(alpha + 1.5));
}

QuadratureRule1D gauss_jacobi(int m, double alpha) {
    if (m < 1) throw std::domain_error("gauss_jacobi: m >= 1");
    if (!(alpha >= 0.0)) throw std::domain_error("gauss_jacobi: alpha >= 0");
    const double nu = alpha + 0.5;
    const NormalizedRecurrence rec(nu);

    QuadratureRule1D rule;
    rule.alpha = alpha;
    rule.nodes.resize(m);
    rule.weights.resize(m);

    // Value and derivative of p_m together with the Christoffel sum
    // K(t) = sum_{k<m} p_k(t)^2 used for the Gauss weight 1/K(x_i).
    auto eval = [&](double t, double& pm, double& dpm, double& christoffel) {
        double p0 = rec.p0, d0 = 0.0;
        double p1 = 0.0, d1 = 0.0;
        double ksum = p0 * p0;
        double pprev = p0, dprev = d0, pprev2 = 0.0, dprev2 = 0.0;
        for (int j = 1; j <= m; ++j) {
            const double A = rec.A(j);
            const double B = (j >= 2) ? rec.B(j) : 0.0;
            p1 = A * t * pprev - B * pprev2;
            d1 = A * (pprev + t * dprev) - B * dprev2;
            if (j < m) ksum += p1 * p1;
            pprev2 = pprev;
            dprev2 = dprev;
            pprev = p1;
            dprev = d1;
        }
        pm = p1;
        dpm = d1;
        christoffel = ksum;
    };

    // Bracket the m simple roots on a theta-uniform sampling (root spacing
    // in theta is ~pi/m, the sampling is several times finer), then refine
    // each bracket by bisection-safeguarded Newton.
    std::vector<std::pair<double, double>> brackets;
    for (int S = 6 * m + 1; brackets.size() != static_cast<std::size_t>(m); S *= 2) {
        brackets.clear();
        double pm, dpm, ks;
        double tprev = std::cos(M_PI * (1.0 - 0.25 / S));
        eval(tprev, pm, dpm, ks);
        double fprev = pm;
        for (int j = 1; j <= S; ++j) {
            const double t = std::cos(M_PI * (1.0 - (j + 0.25) / (S + 0.5)));
            eval(t, pm, dpm, ks);
            if (fprev * pm < 0.0) brackets.emplace_back(tprev, t);
            tprev = t;
            fprev = pm;
        }
        if (S > 100 * m) throw std::runtime_error("gauss_jacobi: root bracketing failed");
    }
    for (int i = 0; i < m; ++i) {
        auto [lo, hi] = brackets[i];
        double pm, dpm, ks;
        eval(lo, pm, dpm, ks);
        double flo = pm;
        double t = 0.5 * (lo + hi);
        for (int it = 0; it < 200; ++it) {
            eval(t, pm, dpm, ks);
            if (pm == 0.0) break;
            if (flo * pm < 0.0) {
                hi = t;
            } else {
                lo = t;
                flo = pm;
            }
            double tn = t - pm / dpm;
            if (!(tn > lo && tn < hi)) tn = 0.5 * (lo + hi);
            if (std::abs(tn - t) < 1e-15) {
                t = tn;
                break;
            }
            t = tn;
        }
        eval(t, pm, dpm, ks);
        rule.nodes[i] = t;
        rule.weights[i] = 1.0 / ks;
    }
    // Enforce exact symmetry of the computed rule.
    for (int i = 0; i < m / 2; ++i) {
        const int j = m - 1 - i;
        const double x = 0.5 * (rule.nodes[j] - rule.nodes[i]);
        rule.nodes[i] = -x;
        rule.nodes[j] = x;
        const double w = 0.5 * (rule.weights[i] + rule.weights[j]);
        rule.weights[i] = rule.weights[j] = w;
    }
    if (m % 2 == 1) rule.nodes[m / 2] = 0.0;
    for (int i = 1; i < m; ++i)
        if (!(rule.nodes[i] > rule.nodes[i - 1]))
            throw std::runtime_error("gauss_jacobi: nodes not increasing");
    return rule;
}

QuadratureRule1D gauss_chebyshev(int m) {
    if (m < 1) throw std::domain_error("gauss_chebyshev: m >= 1");
    QuadratureRule1D rule;
    rule.alpha = -0.5;
    rule.nodes.resize(m);
    rule.weights.assign(m, M_PI / m);
    for (int i = 0; i < m; ++i)
        rule.nodes[i] = std::cos(M_PI * (m - i - 0.5) / m);
    return rule;
}

} // namespace fracsphere::specfun
