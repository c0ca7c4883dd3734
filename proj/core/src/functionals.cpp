#include "fracsphere/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fracsphere/specfun.hpp"
#include "quad_internal.hpp"

namespace fracsphere {

// ---------------------------------------------------------------------------
// KProfile

KProfile KProfile::constant(double c) {
    KProfile k;
    k.kind_ = Kind::Constant;
    k.c0 = c;
    return k;
}

KProfile KProfile::affine_height(double a, double b) {
    KProfile k;
    k.kind_ = Kind::AffineHeight;
    k.c0 = a;
    k.c1 = b;
    return k;
}

KProfile KProfile::zonal_polynomial(std::vector<double> coeffs) {
    KProfile k;
    k.kind_ = Kind::ZonalPolynomial;
    k.poly = std::move(coeffs);
    if (k.poly.empty()) k.poly.push_back(1.0);
    return k;
}

KProfile KProfile::spectral(SpectralField f) {
    KProfile k;
    k.kind_ = Kind::Spectral;
    k.spectral_data = std::move(f);
    return k;
}

bool KProfile::zonal() const {
    switch (kind_) {
        case Kind::Constant:
        case Kind::AffineHeight:
        case Kind::ZonalPolynomial: return true;
        case Kind::Spectral: return spectral_data->geom.mode == SphereMode::Zonal;
    }
    return true;
}

double KProfile::value_t(double t) const {
    switch (kind_) {
        case Kind::Constant: return c0;
        case Kind::AffineHeight: return c0 + c1 * t;
        case Kind::ZonalPolynomial: {
            double v = 0.0;
            for (std::size_t j = poly.size(); j-- > 0;) v = v * t + poly[j];
            return v;
        }
        case Kind::Spectral:
            if (spectral_data->geom.mode != SphereMode::Zonal)
                throw std::logic_error("KProfile::value_t: profile is not zonal");
            return synthesize_at(*spectral_data, t);
    }
    return 0.0;
}

double KProfile::ddt(double t) const {
    switch (kind_) {
        case Kind::Constant: return 0.0;
        case Kind::AffineHeight: return c1;
        case Kind::ZonalPolynomial: {
            double v = 0.0;
            for (std::size_t j = poly.size(); j-- > 1;) v = v * t + j * poly[j];
            return v;
        }
        case Kind::Spectral: {
            if (spectral_data->geom.mode != SphereMode::Zonal)
                throw std::logic_error("KProfile::ddt: profile is not zonal");
            const auto& c = *spectral_data;
            const int L = c.geom.degree_cap;
            std::vector<double> z(L + 1), dz(L + 1);
            zonal_basis_deriv_all(c.geom.n, L, t, z.data(), dz.data());
            double s = 0.0;
            for (int k = 0; k <= L; ++k) s += c.coeff[k] * dz[k];
            return s;
        }
    }
    return 0.0;
}

double KProfile::value(const std::vector<double>& xi) const {
    const std::size_t n = xi.size() - 1;
    if (kind_ == Kind::Spectral && spectral_data->geom.mode == SphereMode::FullS2)
        return synthesize_at(*spectral_data, xi[2], std::atan2(xi[1], xi[0]));
    return value_t(xi[n]);
}

GridField KProfile::sample(std::shared_ptr<const Grid> grid) const {
    GridField out(grid);
    const Geometry& g = grid->geometry();
    if (zonal() || g.mode == SphereMode::Zonal) {
        for (std::size_t i = 0; i < grid->node_count(); ++i)
            out.values[i] = value_t(grid->node_t(i));
    } else {
        for (std::size_t i = 0; i < grid->node_count(); ++i)
            out.values[i] = synthesize_at(*spectral_data, grid->node_t(i), grid->node_phi(i));
    }
    return out;
}

double KProfile::gradient_sup(int n) const {
    if (kind_ == Kind::Constant) return 0.0;
    if (kind_ == Kind::Spectral && spectral_data->geom.mode == SphereMode::FullS2) {
        // sampled bound over a fine grid
        double best = 0.0;
        const int N = 400;
        for (int i = 0; i <= N; ++i) {
            const double t = -1.0 + 2.0 * i / N;
            for (int j = 0; j < 64; ++j) {
                const double phi = 2.0 * M_PI * j / 64.0;
                const double h = 1e-5;
                const double dt = (synthesize_at(*spectral_data, std::min(t + h, 1.0), phi) -
                                   synthesize_at(*spectral_data, std::max(t - h, -1.0), phi)) /
                                  (2.0 * h);
                const double dp = (synthesize_at(*spectral_data, t, phi + h) -
                                   synthesize_at(*spectral_data, t, phi - h)) /
                                  (2.0 * h);
                const double st2 = std::max(1.0 - t * t, 1e-12);
                best = std::max(best, std::sqrt(dt * dt * st2 + dp * dp / st2));
            }
        }
        return best;
    }
    // zonal: |grad K| = |K'(t)| sqrt(1-t^2)
    double best = 0.0;
    const int N = 4000;
    for (int i = 0; i <= N; ++i) {
        const double t = -1.0 + 2.0 * i / N;
        best = std::max(best, std::abs(ddt(t)) * std::sqrt(std::max(0.0, 1.0 - t * t)));
    }
    (void)n;
    return best;
}

double KProfile::max_on_sphere(int n) const {
    (void)n;
    if (kind_ == Kind::Spectral && spectral_data->geom.mode == SphereMode::FullS2) {
        double best = -HUGE_VAL;
        for (int i = 0; i <= 200; ++i)
            for (int j = 0; j < 64; ++j)
                best = std::max(best, synthesize_at(*spectral_data, -1.0 + 2.0 * i / 200.0,
                                                    2.0 * M_PI * j / 64.0));
        return best;
    }
    double best = -HUGE_VAL;
    for (int i = 0; i <= 4000; ++i) best = std::max(best, value_t(-1.0 + 2.0 * i / 4000.0));
    return best;
}

int KProfile::degree() const {
    switch (kind_) {
        case Kind::Constant: return 0;
        case Kind::AffineHeight: return 1;
        case Kind::ZonalPolynomial: return static_cast<int>(poly.size()) - 1;
        case Kind::Spectral: return spectral_data->geom.degree_cap;
    }
    return 0;
}

bool KProfile::antipodally_symmetric(int n) const {
    (void)n;
    switch (kind_) {
        case Kind::Constant: return true;
        case Kind::AffineHeight: return c1 == 0.0;
        case Kind::ZonalPolynomial:
            for (std::size_t j = 1; j < poly.size(); j += 2)
                if (poly[j] != 0.0) return false;
            return true;
        case Kind::Spectral: {
            const auto& c = *spectral_data;
            for (int k = 1; k <= c.geom.degree_cap; k += 2) {
                if (c.geom.mode == SphereMode::Zonal) {
                    if (std::abs(c.coeff[k]) > 1e-14) return false;
                } else {
                    for (int m = -k; m <= k; ++m)
                        if (std::abs(c.coeff[c.index(k, m)]) > 1e-14) return false;
                }
            }
            return true;
        }
    }
    return false;
}

// ---------------------------------------------------------------------------
// Energies and quotients

double energy(const SpectralField& v, const ConformalSpectrum& spec) {
    if (spec.eigenvalues.size() < static_cast<std::size_t>(v.geom.degree_cap) + 1)
        throw std::invalid_argument("energy: spectrum degree cap too small");
    double s = 0.0;
    for (int k = 0; k <= v.geom.degree_cap; ++k) {
        const double e = spec.eigenvalues[k];
        if (v.geom.mode == SphereMode::Zonal) {
            s += e * v.coeff[k] * v.coeff[k];
        } else {
            for (int m = -k; m <= k; ++m) {
                const double a = v.coeff[v.index(k, m)];
                s += e * a * a;
            }
        }
    }
    return s;
}

double hs_norm(const SpectralField& v, double sigma) {
    double s = 0.0;
    const int n = v.geom.n;
    for (int k = 0; k <= v.geom.degree_cap; ++k) {
        const double mult = std::pow(1.0 + static_cast<double>(k) * (k + n - 1.0), sigma);
        if (v.geom.mode == SphereMode::Zonal) {
            s += mult * v.coeff[k] * v.coeff[k];
        } else {
            for (int m = -k; m <= k; ++m) {
                const double a = v.coeff[v.index(k, m)];
                s += mult * a * a;
            }
        }
    }
    return std::sqrt(s);
}

namespace {

// int K |v|^{p+1} by grid quadrature.
double k_weighted_power(const GridField& v, const KProfile& K, double q) {
    const Grid& grid = *v.grid;
    double s = 0.0;
    if (K.zonal() || grid.geometry().mode == SphereMode::Zonal) {
        for (std::size_t i = 0; i < v.values.size(); ++i)
            s += grid.weight(i) * K.value_t(grid.node_t(i)) *
                 std::pow(std::abs(v.values[i]), q);
    } else {
        auto Kf = K.sample(v.grid);
        for (std::size_t i = 0; i < v.values.size(); ++i)
            s += grid.weight(i) * Kf.values[i] * std::pow(std::abs(v.values[i]), q);
    }
    return s;
}

void check_exponent(double p, const ConformalSpectrum& spec) {
    if (!(p > 1.0) || p > spec.critical_exponent() + 1e-12)
        throw std::invalid_argument("exponent p must lie in (1, (n+2s)/(n-2s)]");
}

} // namespace

double sobolev_quotient(const GridField& v, const KProfile& K, double p,
                        const ConformalSpectrum& spec) {
    check_exponent(p, spec);
    const double D = k_weighted_power(v, K, p + 1.0);
    if (!(D > 0.0)) throw std::domain_error("sobolev_quotient: denominator not positive");
    const double E = energy(analyze(v), spec);
    return E * std::pow(D, -2.0 / (p + 1.0));
}

SpectralField quotient_gradient(const GridField& v, const KProfile& K, double p,
                                const ConformalSpectrum& spec) {
    check_exponent(p, spec);
    // Gradient of the quadrature functional in coefficient space, taken at
    // a = analyze(v); the band-limited representative makes it match central
    // differences of sobolev_quotient(synthesize(a +- h e_k)) exactly.
    auto a = analyze(v);
    auto vv = synthesize(a, v.grid);
    const double D = k_weighted_power(vv, K, p + 1.0);
    if (!(D > 0.0)) throw std::domain_error("quotient_gradient: denominator not positive");
    const double E = energy(a, spec);

    // G_k = quadrature coefficients of K |v|^{p-1} v
    GridField kvp(v.grid);
    auto Kf = K.sample(v.grid);
    for (std::size_t i = 0; i < vv.values.size(); ++i)
        kvp.values[i] =
            Kf.values[i] * std::pow(std::abs(vv.values[i]), p - 1.0) * vv.values[i];
    auto G = analyze(kvp);

    SpectralField grad(a.geom);
    const double front = 2.0 * std::pow(D, -2.0 / (p + 1.0));
    for (std::size_t i = 0; i < grad.coeff.size(); ++i) {
        int k;
        if (a.geom.mode == SphereMode::Zonal) {
            k = static_cast<int>(i);
        } else {
            k = static_cast<int>(std::sqrt(static_cast<double>(i)));
            while (static_cast<std::size_t>(k) * k > i) --k;
            while (static_cast<std::size_t>(k + 1) * (k + 1) <= i) ++k;
        }
        grad.coeff[i] = front * (spec.eigenvalues[k] * a.coeff[i] - (E / D) * G.coeff[i]);
    }
    return grad;
}

// ---------------------------------------------------------------------------
// Kazdan-Warner

namespace {

// grad_{X_j} K for the analytic kinds: <grad K, grad xi_j> with
// grad xi_i . grad xi_j = delta_ij - xi_i xi_j, so a zonal K(t) gives
// K'(t) (delta_{j,n+1} - xi_j t).
double zonal_kw_gradient(const KProfile& K, const std::vector<double>& xi, int j, int n) {
    const double t = xi[n];
    const double d = K.ddt(t);
    const double delta = (j == n + 1) ? 1.0 : 0.0;
    return d * (delta - xi[j - 1] * t);
}

} // namespace

double kazdan_warner(const GridField& v, const KProfile& K, int j, double sigma) {
    const Grid& grid = *v.grid;
    const Geometry& g = grid.geometry();
    const int n = g.n;
    if (j < 1 || j > n + 1) throw std::invalid_argument("kazdan_warner: j in 1..n+1");
    if (K.kind() == KProfile::Kind::Constant) return 0.0;
    const double q = 2.0 * n / (n - 2.0 * sigma);

    if (g.mode == SphereMode::Zonal) {
        // Ring average of grad xi_j vanishes for j <= n on zonal fields.
        if (j <= n) return 0.0;
        if (!K.zonal()) throw std::invalid_argument("kazdan_warner: non-zonal K on zonal grid");
        double s = 0.0;
        for (std::size_t i = 0; i < v.values.size(); ++i) {
            const double t = grid.node_t(i);
            s += grid.weight(i) * K.ddt(t) * (1.0 - t * t) *
                 std::pow(std::abs(v.values[i]), q);
        }
        return s;
    }

    // FullS2: analytic kinds pointwise; spectral kind through the identity
    // <grad K, grad xi_j> = (Delta(K xi_j) - xi_j Delta K + n K xi_j) / 2
    // evaluated exactly at one extra degree of band limit.
    if (K.kind() != KProfile::Kind::Spectral ||
        K.spectral_data->geom.mode == SphereMode::Zonal) {
        double s = 0.0;
        for (std::size_t i = 0; i < v.values.size(); ++i) {
            const auto xi = grid.node_coords(i);
            s += grid.weight(i) * zonal_kw_gradient(K, xi, j, n) *
                 std::pow(std::abs(v.values[i]), q);
        }
        return s;
    }

    const SpectralField& cK = *K.spectral_data;
    const int LK = cK.geom.degree_cap;
    Geometry big{n, SphereMode::FullS2, LK + 1};
    auto bgrid = Grid::full_s2(big);
    auto Kf = K.sample(bgrid);

    GridField kxi(bgrid), lap_k_xi(bgrid);
    auto lap = [&](const SpectralField& c) {
        SpectralField out = c;
        for (int k = 0; k <= c.geom.degree_cap; ++k)
            for (int m = -k; m <= k; ++m)
                out.coeff[out.index(k, m)] *= -static_cast<double>(k) * (k + n - 1.0);
        return out;
    };
    auto coord = [&](std::size_t i) { return bgrid->node_coords(i)[j - 1]; };
    for (std::size_t i = 0; i < bgrid->node_count(); ++i) kxi.values[i] = Kf.values[i] * coord(i);
    auto cKxi = analyze(kxi, LK + 1);
    auto cLapKxi = lap(cKxi);
    auto lapK = synthesize(lap(analyze(Kf, LK)), bgrid);
    for (std::size_t i = 0; i < bgrid->node_count(); ++i)
        lap_k_xi.values[i] = coord(i) * lapK.values[i];
    auto cXiLapK = analyze(lap_k_xi, LK + 1);

    SpectralField cGrad(big);
    for (std::size_t i = 0; i < cGrad.coeff.size(); ++i)
        cGrad.coeff[i] = 0.5 * (cLapKxi.coeff[i] - cXiLapK.coeff[i] + n * cKxi.coeff[i]);

    double s = 0.0;
    for (std::size_t i = 0; i < v.values.size(); ++i) {
        const double gk = synthesize_at(cGrad, grid.node_t(i), grid.node_phi(i));
        s += grid.weight(i) * gk * std::pow(std::abs(v.values[i]), q);
    }
    return s;
}

// ---------------------------------------------------------------------------
// Pohozaev

double PohozaevTerms::largest() const {
    return std::max({std::abs(lhs_volume), std::abs(lhs_kgrad), std::abs(rhs_h),
                     std::abs(rhs_xgradh), std::abs(rhs_boundary)});
}

double radial_ring_kernel(int n, double sigma, double r, double s) {
    // A + B(1-c) with A = (r-s)^2, B = 2 r s; weight (1-c^2)^{(n-3)/2}.
    const double A = (r - s) * (r - s);
    const double B = 2.0 * r * s;
    const double ex = 0.5 * (2.0 * sigma - n);
    const double en = 0.5 * (n - 3.0);
    auto f = [&](double c) { return std::pow(A + B * (1.0 - c), ex) * std::pow(1.0 - c * c, en); };
    return sphere_area(n - 2) * detail::integrate_endpoint_graded(f, -1.0, 1.0, 1e-11);
}

namespace {

// d/dr of the ring kernel, for x . grad h terms.
double radial_ring_kernel_dr(int n, double sigma, double r, double s) {
    const double A = (r - s) * (r - s);
    const double B = 2.0 * r * s;
    const double ex = 0.5 * (2.0 * sigma - n);
    const double en = 0.5 * (n - 3.0);
    auto f = [&](double c) {
        const double base = A + B * (1.0 - c);
        // dA/dr = 2(r-s), dB/dr = 2s
        return ex * std::pow(base, ex - 1.0) * (2.0 * (r - s) + 2.0 * s * (1.0 - c)) *
               std::pow(1.0 - c * c, en);
    };
    return sphere_area(n - 2) * detail::integrate_endpoint_graded(f, -1.0, 1.0, 1e-11);
}

} // namespace

PohozaevTerms pohozaev_residual(const std::function<double(double)>& u,
                                const std::function<double(double)>& K,
                                const std::function<double(double)>& dK, double p, double R,
                                int n, double sigma, int radial_nodes,
                                const std::function<double(double)>* h,
                                const std::function<double(double)>* dh) {
    if (radial_nodes < 4) throw std::invalid_argument("pohozaev_residual: radial_nodes >= 4");
    const double surf = sphere_area(n - 1);
    const double dr = R / radial_nodes;

    // Tail rule: s = R/w on (0,1], fixed Gauss-Legendre panel set.
    const auto& tail_rule = specfun::gauss_jacobi(48, 0.0);
    std::vector<double> tail_s(tail_rule.nodes.size()), tail_w(tail_rule.nodes.size());
    for (std::size_t q = 0; q < tail_rule.nodes.size(); ++q) {
        const double w = 0.5 * (tail_rule.nodes[q] + 1.0); // (0,1)
        tail_s[q] = R / w;
        tail_w[q] = 0.5 * tail_rule.weights[q] * R / (w * w); // ds = R/w^2 dw
    }

    auto tail_h = [&](double r, bool deriv) {
        double acc = 0.0;
        for (std::size_t q = 0; q < tail_s.size(); ++q) {
            const double s = tail_s[q];
            const double ker = deriv ? radial_ring_kernel_dr(n, sigma, r, s)
                                     : radial_ring_kernel(n, sigma, r, s);
            acc += tail_w[q] * K(s) * std::pow(u(s), p) * std::pow(s, n - 1.0) * ker;
        }
        return acc;
    };

    PohozaevTerms T;
    const double cvol = 0.5 * (n - 2.0 * sigma) - n / (p + 1.0);
    for (int i = 0; i < radial_nodes; ++i) {
        const double r = (i + 0.5) * dr;
        const double meas = surf * std::pow(r, n - 1.0) * dr;
        const double ur = u(r), Kr = K(r);
        const double up1 = std::pow(ur, p + 1.0), up = std::pow(ur, p);
        const double hr = h ? (*h)(r) : tail_h(r, false);
        const double dhr = dh ? (*dh)(r) : (h ? 0.0 : tail_h(r, true));
        if (h && !dh)
            throw std::invalid_argument("pohozaev_residual: supplied h requires dh");
        T.lhs_volume += cvol * meas * Kr * up1;
        T.lhs_kgrad += -(1.0 / (p + 1.0)) * meas * r * dK(r) * up1;
        T.rhs_h += 0.5 * (n - 2.0 * sigma) * meas * Kr * up * hr;
        T.rhs_xgradh += meas * r * dhr * Kr * up;
    }
    T.rhs_boundary =
        -(R / (p + 1.0)) * surf * std::pow(R, n - 1.0) * K(R) * std::pow(u(R), p + 1.0);
    return T;
}

// ---------------------------------------------------------------------------
// Test functions and the expansion constant

double expansion_constant_A(int n, double sigma) {
    // r = s/(1-s) maps [0,1) to [0,inf); the integrand decays like
    // (1-s)^{2 sigma - 1}, graded toward s = 1.
    auto f = [&](double s) {
        const double r = s / (1.0 - s);
        const double jac = 1.0 / ((1.0 - s) * (1.0 - s));
        return std::pow(2.0, n) * std::pow(r, n - 1.0) *
               std::pow(1.0 + r * r, -0.5 * (n + 2.0 * sigma)) * jac;
    };
    const double integral = detail::integrate_graded(f, 0.0, 0.5, false, 1e-13) +
                            detail::integrate_graded(f, 0.5, 1.0, true, 1e-13, 300, 1e-9);
    return std::pow(2.0, -0.5 * (n - 2.0 * sigma)) * sphere_area(n - 1) * integral;
}

namespace {

double bubble_beta_lambda(double beta) { return std::sqrt((beta + 1.0) / (beta - 1.0)); }

} // namespace

double test_function_quotient(double beta, const KProfile& K, const ConformalSpectrum& spec,
                              std::shared_ptr<const Grid> grid) {
    if (!(beta > 1.0)) throw std::invalid_argument("test_function_quotient: beta > 1");
    const Geometry& g = grid->geometry();
    const int n = g.n;
    // v_{i,beta} = (sqrt(beta^2-1)/(beta -+ t))^{(n-2s)/2} are the bubbles of
    // scale lambda(beta) at the two poles.
    const double lambda = bubble_beta_lambda(beta);
    GridField v(grid);
    for (std::size_t i = 0; i < grid->node_count(); ++i) {
        const double t = grid->node_t(i);
        v.values[i] = bubble_sphere_value(n, spec.sigma, lambda, t) +
                      bubble_sphere_value(n, spec.sigma, lambda, -t);
    }
    return sobolev_quotient(v, K, spec.critical_exponent(), spec);
}

TestFunctionFit fit_test_function_slope(const KProfile& K, const ConformalSpectrum& spec,
                                        std::shared_ptr<const Grid> grid, double beta_lo,
                                        double beta_hi, int samples) {
    if (samples < 2) throw std::invalid_argument("fit_test_function_slope: samples >= 2");
    const int n = grid->geometry().n;
    const double sigma = spec.sigma;
    const double omega = sphere_area(n);
    const double kmax = K.value_t(1.0); // profile value at the bubble pole
    const double denom = spec.order_constant * std::pow(omega, 2.0 * sigma / n) *
                         std::pow(2.0, 2.0 * sigma / n);

    TestFunctionFit fit;
    for (int i = 0; i < samples; ++i) {
        const double beta = beta_lo + (beta_hi - beta_lo) * i / (samples - 1.0);
        const double Q = test_function_quotient(beta, K, spec, grid);
        fit.beta.push_back(beta);
        fit.x.push_back(std::pow(beta - 1.0, 0.5 * (n - 2.0 * sigma)));
        fit.y.push_back(Q * std::pow(kmax, (n - 2.0 * sigma) / n) / denom - 1.0);
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int m = samples;
    for (int i = 0; i < m; ++i) {
        sx += fit.x[i];
        sy += fit.y[i];
        sxx += fit.x[i] * fit.x[i];
        sxy += fit.x[i] * fit.y[i];
    }
    fit.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    fit.intercept = (sy - fit.slope * sx) / m;
    return fit;
}

// ---------------------------------------------------------------------------
// Index count

IndexCountResult index_count_check(const KProfile& K, int n) {
    IndexCountResult res;
    for (const auto& cp : K.critical_points) {
        if (cp.a.size() != static_cast<std::size_t>(n))
            throw std::invalid_argument("index_count_check: a_j list must have length n");
        double sum_a = 0.0;
        int neg = 0;
        for (double aj : cp.a) {
            if (aj == 0.0)
                throw std::invalid_argument("index_count_check: a_j must be nonzero");
            sum_a += aj;
            if (aj < 0.0) ++neg;
        }
        if (sum_a == 0.0)
            throw std::invalid_argument("index_count_check: sum of a_j must be nonzero");
        if (sum_a < 0.0) res.sum += (neg % 2 == 0) ? 1 : -1;
    }
    const long long parity = (n % 2 == 0) ? 1 : -1;
    res.hypothesis_holds = (res.sum != parity);
    return res;
}

} // namespace fracsphere
