#include "fracsphere/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fracsphere/specfun.hpp"
#include "quad_internal.hpp"

namespace fracsphere {

using specfun::gauss_jacobi;
using specfun::gegenbauer_normalized_all;
using specfun::log_gamma;

double sphere_area(int n) {
    if (n < 0) throw std::domain_error("sphere_area: n >= 0");
    return 2.0 * std::exp(0.5 * (n + 1) * std::log(M_PI) - log_gamma(0.5 * (n + 1)));
}

void Geometry::validate() const {
    if (n < 2) throw std::invalid_argument("Geometry: n >= 2");
    if (degree_cap < 0) throw std::invalid_argument("Geometry: degree_cap >= 0");
    if (mode == SphereMode::FullS2 && n != 2)
        throw std::invalid_argument("Geometry: FullS2 mode requires n = 2");
}

// ---------------------------------------------------------------------------
// Grid

std::shared_ptr<const Grid> Grid::zonal(const Geometry& g, int rings) {
    g.validate();
    if (g.mode != SphereMode::Zonal) throw std::invalid_argument("Grid::zonal: geometry mode mismatch");
    const int L = g.degree_cap;
    const int m = (rings > 0) ? rings : 2 * (L + 1);
    if (m < L + 1) throw std::invalid_argument("Grid::zonal: need at least degree_cap+1 rings");

    auto grid = std::shared_ptr<Grid>(new Grid());
    grid->geom_ = g;
    const double alpha = 0.5 * (g.n - 2);
    auto rule = gauss_jacobi(m, alpha);
    grid->t_ = rule.nodes;
    grid->w_.resize(m);
    const double ring_area = sphere_area(g.n - 1);
    for (int i = 0; i < m; ++i) grid->w_[i] = ring_area * rule.weights[i];

    // Barycentric weights for the Gauss nodes: lambda_i proportional to
    // w_i p_{m-1}(x_i) (from the classical Gauss-weight identity), so no
    // O(m^2) products and no overflow for large m.
    grid->bary_.resize(m);
    const double nu = alpha + 0.5;
    std::vector<double> p(m);
    double scale = 0.0;
    for (int i = 0; i < m; ++i) {
        gegenbauer_normalized_all(m - 1, nu, grid->t_[i], p.data());
        grid->bary_[i] = rule.weights[i] * p[m - 1];
        scale = std::max(scale, std::abs(grid->bary_[i]));
    }
    for (double& b : grid->bary_) b /= scale;
    return grid;
}

std::shared_ptr<const Grid> Grid::full_s2(const Geometry& g) {
    g.validate();
    if (g.mode != SphereMode::FullS2) throw std::invalid_argument("Grid::full_s2: geometry mode mismatch");
    const int L = g.degree_cap;
    auto grid = std::shared_ptr<Grid>(new Grid());
    grid->geom_ = g;
    grid->n_theta_ = L + 1;
    grid->n_phi_ = 2 * L + 1;
    auto rule = gauss_jacobi(L + 1, 0.0);
    grid->t_ = rule.nodes;
    grid->w_.resize(L + 1);
    grid->theta_.resize(L + 1);
    const double wphi = 2.0 * M_PI / grid->n_phi_;
    for (int i = 0; i <= L; ++i) {
        grid->w_[i] = rule.weights[i] * wphi; // per-node weight
        grid->theta_[i] = std::acos(grid->t_[i]);
    }
    return grid;
}

std::size_t Grid::node_count() const {
    return (geom_.mode == SphereMode::Zonal) ? t_.size()
                                             : static_cast<std::size_t>(n_theta_) * n_phi_;
}

double Grid::weight(std::size_t i) const {
    if (geom_.mode == SphereMode::Zonal) return w_[i];
    return w_[i / n_phi_];
}

double Grid::node_t(std::size_t i) const {
    if (geom_.mode == SphereMode::Zonal) return t_[i];
    return t_[i / n_phi_];
}

double Grid::node_phi(std::size_t i) const {
    if (geom_.mode != SphereMode::FullS2) throw std::logic_error("node_phi: FullS2 only");
    return 2.0 * M_PI * (i % n_phi_) / n_phi_;
}

std::vector<double> Grid::node_coords(std::size_t i) const {
    std::vector<double> x(geom_.n + 1, 0.0);
    const double t = node_t(i);
    const double s = std::sqrt(std::max(0.0, 1.0 - t * t));
    if (geom_.mode == SphereMode::Zonal) {
        x[0] = s;
        x[geom_.n] = t;
    } else {
        const double phi = node_phi(i);
        x[0] = s * std::cos(phi);
        x[1] = s * std::sin(phi);
        x[2] = t;
    }
    return x;
}

double Grid::weight_sum() const {
    double s = 0.0;
    const std::size_t nn = node_count();
    for (std::size_t i = 0; i < nn; ++i) s += weight(i);
    return s;
}

double Grid::interpolate(const std::vector<double>& values, double tq) const {
    if (geom_.mode != SphereMode::Zonal) throw std::logic_error("interpolate(t): zonal only");
    if (values.size() != t_.size()) throw std::invalid_argument("interpolate: length mismatch");
    double num = 0.0, den = 0.0;
    const std::size_t m = t_.size();
    for (std::size_t i = 0; i < m; ++i) {
        const double d = tq - t_[i];
        if (d == 0.0) return values[i];
        const double c = bary_[i] / d;
        num += c * values[i];
        den += c;
    }
    return num / den;
}

double Grid::interpolate(const std::vector<double>& values, double tq, double phiq) const {
    if (geom_.mode != SphereMode::FullS2) throw std::logic_error("interpolate(t,phi): FullS2 only");
    if (values.size() != node_count()) throw std::invalid_argument("interpolate: length mismatch");
    // Bilinear in (theta, phi) with periodic phi and clamped poles.
    const double theta = std::acos(std::clamp(tq, -1.0, 1.0));
    // theta_ decreases with ring index (t_ increases); locate bracketing rings.
    int lo = 0, hi = n_theta_ - 1;
    double wt;
    if (theta >= theta_[0]) {
        lo = hi = 0;
        wt = 0.0;
    } else if (theta <= theta_[n_theta_ - 1]) {
        lo = hi = n_theta_ - 1;
        wt = 0.0;
    } else {
        while (hi - lo > 1) {
            const int mid = (lo + hi) / 2;
            (theta_[mid] > theta ? lo : hi) = mid;
        }
        wt = (theta_[lo] - theta) / (theta_[lo] - theta_[hi]);
    }
    double phi = std::fmod(phiq, 2.0 * M_PI);
    if (phi < 0) phi += 2.0 * M_PI;
    const double fj = phi / (2.0 * M_PI) * n_phi_;
    const int j0 = static_cast<int>(fj) % n_phi_;
    const int j1 = (j0 + 1) % n_phi_;
    const double wp = fj - std::floor(fj);
    auto v = [&](int i, int j) { return values[static_cast<std::size_t>(i) * n_phi_ + j]; };
    const double a = (1.0 - wp) * v(lo, j0) + wp * v(lo, j1);
    const double b = (1.0 - wp) * v(hi, j0) + wp * v(hi, j1);
    return (1.0 - wt) * a + wt * b;
}

// ---------------------------------------------------------------------------
// Fields

GridField::GridField(std::shared_ptr<const Grid> g, double fill)
    : grid(std::move(g)), values(grid->node_count(), fill) {}

double GridField::max() const { return *std::max_element(values.begin(), values.end()); }
double GridField::min() const { return *std::min_element(values.begin(), values.end()); }

SpectralField::SpectralField(const Geometry& g) : geom(g), coeff(expected_size(g), 0.0) {}

std::size_t SpectralField::expected_size(const Geometry& g) {
    const std::size_t L = g.degree_cap;
    return (g.mode == SphereMode::Zonal) ? L + 1 : (L + 1) * (L + 1);
}

std::size_t SpectralField::index(int k, int m) const {
    if (geom.mode == SphereMode::Zonal) {
        if (m != 0) throw std::invalid_argument("SpectralField::index: zonal has m = 0");
        return k;
    }
    if (std::abs(m) > k) throw std::invalid_argument("SpectralField::index: |m| <= k");
    return static_cast<std::size_t>(k) * k + k + m;
}

double SpectralField::norm() const {
    double s = 0.0;
    for (double c : coeff) s += c * c;
    return std::sqrt(s);
}

double zonal_basis(int n, int k, double t) {
    return specfun::gegenbauer_normalized(k, 0.5 * (n - 1), t) / std::sqrt(sphere_area(n - 1));
}

void zonal_basis_all(int n, int kmax, double t, double* out) {
    gegenbauer_normalized_all(kmax, 0.5 * (n - 1), t, out);
    const double s = 1.0 / std::sqrt(sphere_area(n - 1));
    for (int k = 0; k <= kmax; ++k) out[k] *= s;
}

void zonal_basis_deriv_all(int n, int kmax, double t, double* out, double* dout) {
    specfun::gegenbauer_normalized_deriv_all(kmax, 0.5 * (n - 1), t, out, dout);
    const double s = 1.0 / std::sqrt(sphere_area(n - 1));
    for (int k = 0; k <= kmax; ++k) {
        out[k] *= s;
        dout[k] *= s;
    }
}

namespace {

// Orthonormal associated Legendre block q_k^m = N_k^m P_k^m for k = m..L,
// N_k^m = sqrt((2k+1)/(4 pi) (k-m)!/(k+m)!); no Condon-Shortley phase.
void assoc_legendre_normalized(int L, int m, double t, double* out /* size L-m+1 */) {
    const double s = std::sqrt(std::max(0.0, 1.0 - t * t));
    double qmm = std::sqrt(1.0 / (4.0 * M_PI));
    for (int j = 1; j <= m; ++j) qmm *= s * std::sqrt((2.0 * j + 1.0) / (2.0 * j));
    out[0] = qmm;
    if (L == m) return;
    double qprev = qmm;
    double q = std::sqrt(2.0 * m + 3.0) * t * qmm;
    out[1] = q;
    for (int k = m + 2; k <= L; ++k) {
        const double ak = std::sqrt((2.0 * k - 1.0) * (2.0 * k + 1.0) /
                                    (static_cast<double>(k - m) * (k + m)));
        const double bk = std::sqrt((2.0 * k + 1.0) * (k - 1.0 - m) * (k - 1.0 + m) /
                                    ((2.0 * k - 3.0) * (k - m) * (k + m)));
        const double qnext = ak * t * q - bk * qprev;
        qprev = q;
        q = qnext;
        out[k - m] = q;
    }
}

} // namespace

SpectralField analyze(const GridField& f, int degree_cap) {
    const Grid& grid = *f.grid;
    Geometry g = grid.geometry();
    if (degree_cap >= 0) g.degree_cap = degree_cap;
    const int L = g.degree_cap;
    SpectralField out(g);

    if (g.mode == SphereMode::Zonal) {
        const auto& t = grid.ring_t();
        const auto& w = grid.ring_weight();
        std::vector<double> z(L + 1);
        for (std::size_t i = 0; i < t.size(); ++i) {
            zonal_basis_all(g.n, L, t[i], z.data());
            const double wf = w[i] * f.values[i];
            for (int k = 0; k <= L; ++k) out.coeff[k] += wf * z[k];
        }
        return out;
    }

    const int ntheta = grid.n_theta(), nphi = grid.n_phi();
    const auto& t = grid.ring_t();
    // Longitude sums per ring and order.
    std::vector<double> fc((L + 1) * ntheta, 0.0), fs((L + 1) * ntheta, 0.0);
    const double wphi = 2.0 * M_PI / nphi;
    for (int i = 0; i < ntheta; ++i) {
        for (int j = 0; j < nphi; ++j) {
            const double v = f.values[static_cast<std::size_t>(i) * nphi + j] * wphi;
            const double phi = 2.0 * M_PI * j / nphi;
            for (int m = 0; m <= L; ++m) {
                fc[m * ntheta + i] += v * std::cos(m * phi);
                fs[m * ntheta + i] += v * std::sin(m * phi);
            }
        }
    }
    // Colatitude quadrature against normalized associated Legendre.
    std::vector<double> q(L + 1);
    const auto& wrule = gauss_jacobi(ntheta, 0.0).weights;
    for (int m = 0; m <= L; ++m) {
        const double norm = (m == 0) ? 1.0 : std::sqrt(2.0);
        for (int i = 0; i < ntheta; ++i) {
            assoc_legendre_normalized(L, m, t[i], q.data());
            for (int k = m; k <= L; ++k) {
                const double base = wrule[i] * q[k - m] * norm;
                out.coeff[out.index(k, m)] += base * fc[m * ntheta + i];
                if (m > 0) out.coeff[out.index(k, -m)] += base * fs[m * ntheta + i];
            }
        }
    }
    return out;
}

GridField synthesize(const SpectralField& c, std::shared_ptr<const Grid> grid) {
    if (grid->geometry().n != c.geom.n || grid->geometry().mode != c.geom.mode)
        throw std::invalid_argument("synthesize: geometry mismatch");
    const Geometry& g = c.geom;
    const int L = g.degree_cap;
    GridField out(grid);

    if (g.mode == SphereMode::Zonal) {
        const auto& t = grid->ring_t();
        std::vector<double> z(L + 1);
        for (std::size_t i = 0; i < t.size(); ++i) {
            zonal_basis_all(g.n, L, t[i], z.data());
            double s = 0.0;
            for (int k = 0; k <= L; ++k) s += c.coeff[k] * z[k];
            out.values[i] = s;
        }
        return out;
    }

    const int ntheta = grid->n_theta(), nphi = grid->n_phi();
    const auto& t = grid->ring_t();
    std::vector<double> gc((L + 1) * ntheta, 0.0), gs((L + 1) * ntheta, 0.0);
    std::vector<double> q(L + 1);
    for (int m = 0; m <= L; ++m) {
        const double norm = (m == 0) ? 1.0 : std::sqrt(2.0);
        for (int i = 0; i < ntheta; ++i) {
            assoc_legendre_normalized(L, m, t[i], q.data());
            double sc = 0.0, ss = 0.0;
            for (int k = m; k <= L; ++k) {
                sc += c.coeff[c.index(k, m)] * q[k - m];
                if (m > 0) ss += c.coeff[c.index(k, -m)] * q[k - m];
            }
            gc[m * ntheta + i] = norm * sc;
            gs[m * ntheta + i] = norm * ss;
        }
    }
    for (int i = 0; i < ntheta; ++i) {
        for (int j = 0; j < nphi; ++j) {
            const double phi = 2.0 * M_PI * j / nphi;
            double s = gc[i];
            for (int m = 1; m <= L; ++m)
                s += gc[m * ntheta + i] * std::cos(m * phi) + gs[m * ntheta + i] * std::sin(m * phi);
            out.values[static_cast<std::size_t>(i) * nphi + j] = s;
        }
    }
    return out;
}

double synthesize_at(const SpectralField& c, double t) {
    if (c.geom.mode != SphereMode::Zonal) throw std::logic_error("synthesize_at: zonal only");
    const int L = c.geom.degree_cap;
    std::vector<double> z(L + 1);
    zonal_basis_all(c.geom.n, L, t, z.data());
    double s = 0.0;
    for (int k = 0; k <= L; ++k) s += c.coeff[k] * z[k];
    return s;
}

double synthesize_at(const SpectralField& c, double t, double phi) {
    if (c.geom.mode != SphereMode::FullS2)
        throw std::logic_error("synthesize_at(t,phi): FullS2 only");
    const int L = c.geom.degree_cap;
    std::vector<double> q(L + 1);
    double s = 0.0;
    for (int m = 0; m <= L; ++m) {
        assoc_legendre_normalized(L, m, t, q.data());
        const double norm = (m == 0) ? 1.0 : std::sqrt(2.0);
        double sc = 0.0, ss = 0.0;
        for (int k = m; k <= L; ++k) {
            sc += c.coeff[c.index(k, m)] * q[k - m];
            if (m > 0) ss += c.coeff[c.index(k, -m)] * q[k - m];
        }
        s += norm * (sc * std::cos(m * phi) + ((m > 0) ? ss * std::sin(m * phi) : 0.0));
    }
    return s;
}

double integrate(const GridField& f) {
    double s = 0.0;
    for (std::size_t i = 0; i < f.values.size(); ++i) s += f.grid->weight(i) * f.values[i];
    return s;
}

double inner_product(const GridField& a, const GridField& b) {
    if (a.grid != b.grid && a.values.size() != b.values.size())
        throw std::invalid_argument("inner_product: grid mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i)
        s += a.grid->weight(i) * a.values[i] * b.values[i];
    return s;
}

double funk_hecke_multiplier(const std::function<double(double)>& kernel, int k,
                             const Geometry& geom) {
    geom.validate();
    const int n = geom.n;
    const double nu = 0.5 * (n - 1);
    const double ck1 = specfun::gegenbauer(k, nu, 1.0);
    auto weighted = [&](double t, bool absval) {
        const double ratio = specfun::gegenbauer(k, nu, t) / ck1; // |ratio| <= 1
        const double v = kernel(t) * std::pow(1.0 - t * t, 0.5 * (n - 2));
        return absval ? std::abs(v) : v * ratio;
    };
    auto integrand = [&](double t) { return weighted(t, false); };
    auto magnitude = [&](double t) { return weighted(t, true); };

    // The kernel is a black box of t, so near t = 1 the quantity 1 - t is
    // limited to ~1e-12 before forming t = 1 - s^2 loses the distance to
    // cancellation; the graded integrator closes the remaining sliver by
    // geometric extrapolation (exact for power-law singularities).
    auto total = [&](double delta, auto&& g) {
        const double smooth = detail::integrate_graded(g, -1.0, -0.5, false, 1e-13) +
                              detail::integrate_adaptive(g, -0.5, 1.0 - delta, 1e-12);
        const double sing = detail::integrate_graded(
            [&](double s) { return 2.0 * s * g(1.0 - s * s); }, 0.0, std::sqrt(delta), false,
            1e-13, 300, /*min_width=*/1e-6);
        return smooth + sing;
    };
    // Consistency under moving the split point doubles as the refinement
    // convergence check; near-cancelling multipliers are judged against the
    // kernel's absolute mass.
    const double v1 = total(1e-3, integrand);
    const double v2 = total(4e-3, integrand);
    const double scale = std::max(total(1e-3, magnitude), 1e-30);
    if (std::abs(v2 - v1) > 1e-8 * scale)
        throw QuadratureError("funk_hecke_multiplier: singular quadrature did not converge");
    return sphere_area(n - 1) * v1;
}

} // namespace fracsphere
