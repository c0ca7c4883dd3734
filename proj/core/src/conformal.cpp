#include "fracsphere/conformal.hpp"

#include <cmath>
#include <stdexcept>

#include "fracsphere/errors.hpp"
#include "fracsphere/specfun.hpp"
#include "quad_internal.hpp"

namespace fracsphere {

using specfun::gamma_ratio;
using specfun::log_gamma;

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(const std::vector<double>& a) { return dot(a, a); }

void check_sigma(int n, double sigma) {
    if (!(sigma > 0.0) || !(sigma < 0.5 * n))
        throw std::invalid_argument("sigma must lie in (0, n/2)");
}

} // namespace

ConformalSpectrum ConformalSpectrum::make(int n, double sigma, int degree_cap) {
    check_sigma(n, sigma);
    ConformalSpectrum s;
    s.n = n;
    s.sigma = sigma;
    s.eigenvalues.resize(degree_cap + 1);
    for (int k = 0; k <= degree_cap; ++k)
        s.eigenvalues[k] = gamma_ratio(k + 0.5 * n + sigma, k + 0.5 * n - sigma);
    s.order_constant = s.eigenvalues[0];
    s.green_constant = std::exp(log_gamma(0.5 * (n - 2.0 * sigma)) - 2.0 * sigma * std::log(2.0) -
                                0.5 * n * std::log(M_PI) - log_gamma(sigma));
    return s;
}

namespace {

SpectralField scale_by_degree(const SpectralField& f, const ConformalSpectrum& spec, bool invert) {
    if (spec.eigenvalues.size() < static_cast<std::size_t>(f.geom.degree_cap) + 1)
        throw std::invalid_argument("ConformalSpectrum: degree cap too small for field");
    if (spec.n != f.geom.n) throw std::invalid_argument("ConformalSpectrum: dimension mismatch");
    SpectralField out = f;
    const int L = f.geom.degree_cap;
    if (f.geom.mode == SphereMode::Zonal) {
        for (int k = 0; k <= L; ++k) {
            const double e = spec.eigenvalues[k];
            out.coeff[k] *= invert ? 1.0 / e : e;
        }
    } else {
        for (int k = 0; k <= L; ++k) {
            const double e = spec.eigenvalues[k];
            const double s = invert ? 1.0 / e : e;
            for (int m = -k; m <= k; ++m) out.coeff[out.index(k, m)] *= s;
        }
    }
    return out;
}

} // namespace

SpectralField apply_psigma(const SpectralField& f, const ConformalSpectrum& spec) {
    return scale_by_degree(f, spec, false);
}

SpectralField apply_inverse_psigma(const SpectralField& f, const ConformalSpectrum& spec) {
    return scale_by_degree(f, spec, true);
}

// ---------------------------------------------------------------------------
// Direct Riesz potential

namespace {

// Zonal target: rotate coordinates so the target is the pole. With
// u = cos(angle to target) the potential becomes
//   c_{n,s} int (2-2u)^{(2s-n)/2} (1-u^2)^{(n-2)/2} G(u) du,
// where G(u) is the exact ring integral of the interpolated field over the
// latitude sphere at angle acos(u) around the target. G is a polynomial of
// the same degree as the interpolant, so a fixed Gauss rule in the ring
// variable is exact; all singular behavior sits in the 1D u-integral.
class ZonalRieszTarget {
  public:
    ZonalRieszTarget(const GridField& f, const ConformalSpectrum& spec)
        : f_(f), grid_(*f.grid), n_(spec.n), sigma_(spec.sigma) {
        const int m = static_cast<int>(grid_.ring_t().size());
        const int mc = m / 2 + 2;
        ring_ = (n_ >= 3) ? specfun::gauss_jacobi(mc, 0.5 * (n_ - 3))
                          : specfun::gauss_chebyshev(mc);
        ring_area_ = sphere_area(n_ - 2);
    }

    double potential(double t_target) const {
        const double ct = t_target;
        const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
        // Ring integral of the field at polar angle acos(u) around the
        // target; sin of that angle is passed explicitly so that both
        // substitutions below can form it without cancellation.
        auto ring_integral = [&](double u, double sin_u) {
            const double a = ct * u;
            const double b = st * sin_u;
            double s = 0.0;
            for (std::size_t q = 0; q < ring_.nodes.size(); ++q)
                s += ring_.weights[q] * grid_.interpolate(f_.values, a + b * ring_.nodes[q]);
            return ring_area_ * s;
        };
        const double ex = 0.5 * (2.0 * sigma_ - n_);
        const double en = 0.5 * (n_ - 2.0);
        // u in [-1,0] via u = -1 + s^2: kernel (4-2s^2)^ex, measure
        // (1-u^2)^en = (s^2 (2-s^2))^en, Jacobian 2s.
        auto lower_integrand = [&](double s) {
            const double s2 = s * s;
            const double sin_u = s * std::sqrt(2.0 - s2);
            return 2.0 * s * std::pow(4.0 - 2.0 * s2, ex) * std::pow(sin_u * sin_u, en) *
                   ring_integral(-1.0 + s2, sin_u);
        };
        const double lower = detail::integrate_adaptive(lower_integrand, 0.0, 1.0, 1e-11);
        // u in [0,1] via u = 1 - s^2: the kernel is exactly (2 s^2)^ex, so the
        // distance never suffers cancellation; graded panels absorb the
        // leftover s^(2 sigma - 1) power.
        auto upper_integrand = [&](double s) {
            const double s2 = s * s;
            const double sin_u = s * std::sqrt(2.0 - s2);
            return 2.0 * s * std::pow(2.0 * s2, ex) * std::pow(sin_u * sin_u, en) *
                   ring_integral(1.0 - s2, sin_u);
        };
        const double upper =
            detail::integrate_graded(upper_integrand, 0.0, 1.0, /*toward_upper=*/false, 1e-12);
        return lower + upper;
    }

  private:
    const GridField& f_;
    const Grid& grid_;
    int n_;
    double sigma_;
    specfun::QuadratureRule1D ring_;
    double ring_area_;
};

} // namespace

GridField riesz_direct(const GridField& f, const ConformalSpectrum& spec) {
    const Grid& grid = *f.grid;
    const Geometry& g = grid.geometry();
    if (g.n != spec.n) throw std::invalid_argument("riesz_direct: dimension mismatch");
    GridField out(f.grid);

    if (g.mode == SphereMode::Zonal) {
        ZonalRieszTarget target(f, spec);
        const auto& t = grid.ring_t();
        for (std::size_t i = 0; i < t.size(); ++i)
            out.values[i] = spec.green_constant * target.potential(t[i]);
        return out;
    }

    // FullS2 Nystrom sum; diagonal via the analytic kernel integral over a
    // geodesic cap of the node's measure: cap weight w -> (pi/s)(w/pi)^s.
    const double ex = spec.sigma - 1.0; // (2s-n)/2 with n = 2
    const std::size_t nn = grid.node_count();
    std::vector<std::vector<double>> coords(nn);
    for (std::size_t i = 0; i < nn; ++i) coords[i] = grid.node_coords(i);
    for (std::size_t i = 0; i < nn; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < nn; ++j) {
            if (j == i) continue;
            const double d2 = 2.0 - 2.0 * dot(coords[i], coords[j]);
            s += grid.weight(j) * f.values[j] * std::pow(d2, ex);
        }
        s += f.values[i] * (M_PI / spec.sigma) * std::pow(grid.weight(i) / M_PI, spec.sigma);
        out.values[i] = spec.green_constant * s;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Stereographic projection

StereoImage stereo_forward(const std::vector<double>& x) {
    const std::size_t n = x.size();
    const double r2 = norm2(x);
    StereoImage img;
    img.point.resize(n + 1);
    const double s = 2.0 / (1.0 + r2);
    for (std::size_t i = 0; i < n; ++i) img.point[i] = s * x[i];
    img.point[n] = (r2 - 1.0) / (r2 + 1.0);
    img.jacobian = std::pow(s, static_cast<double>(n));
    return img;
}

std::vector<double> stereo_inverse(const std::vector<double>& xi) {
    const std::size_t n = xi.size() - 1;
    const double denom = 1.0 - xi[n];
    if (denom <= 0.0) throw std::domain_error("stereo_inverse: north pole has no preimage");
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = xi[i] / denom;
    return x;
}

std::vector<double> rotate_between(const std::vector<double>& a, const std::vector<double>& b,
                                   const std::vector<double>& x) {
    const double ab = dot(a, b);
    if (ab < -1.0 + 1e-12) {
        // Antipodal: route through an intermediate axis orthogonal to a.
        std::size_t imin = 0;
        for (std::size_t i = 1; i < a.size(); ++i)
            if (std::abs(a[i]) < std::abs(a[imin])) imin = i;
        std::vector<double> e(a.size(), 0.0);
        e[imin] = 1.0;
        const double ea = dot(e, a);
        double nrm = 0.0;
        for (std::size_t i = 0; i < e.size(); ++i) {
            e[i] -= ea * a[i];
            nrm += e[i] * e[i];
        }
        nrm = std::sqrt(nrm);
        for (double& v : e) v /= nrm;
        return rotate_between(e, b, rotate_between(a, e, x));
    }
    const double ax = dot(a, x), bx = dot(b, x);
    std::vector<double> y(x);
    const double c = (ax + bx) / (1.0 + ab);
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += -c * (a[i] + b[i]) + 2.0 * ax * b[i];
    return y;
}

// ---------------------------------------------------------------------------
// Mobius dilations

std::vector<double> MobiusMap::apply(const std::vector<double>& xi) const {
    const double t = dot(xi, center);
    if (t >= 1.0 - 1e-15) return center;
    if (t <= -1.0 + 1e-15) {
        std::vector<double> anti(center);
        for (double& v : anti) v = -v;
        return anti;
    }
    const double l2 = lambda * lambda;
    const double tp = ((1.0 + t) - l2 * (1.0 - t)) / ((1.0 + t) + l2 * (1.0 - t));
    std::vector<double> e(xi);
    double nrm = 0.0;
    for (std::size_t i = 0; i < e.size(); ++i) {
        e[i] -= t * center[i];
        nrm += e[i] * e[i];
    }
    nrm = std::sqrt(nrm);
    const double sp = std::sqrt(std::max(0.0, 1.0 - tp * tp));
    std::vector<double> out(center.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = tp * center[i] + sp * e[i] / nrm;
    return out;
}

double MobiusMap::factor(const std::vector<double>& xi) const {
    const double t = dot(xi, center);
    const double l2 = lambda * lambda;
    const double base = 2.0 * lambda / ((1.0 + l2) + (1.0 - l2) * t);
    return std::pow(base, static_cast<double>(center.size() - 1));
}

MobiusMap MobiusMap::composed_with(const MobiusMap& other) const {
    const double c = dot(center, other.center);
    if (std::abs(c - 1.0) > 1e-12)
        throw std::invalid_argument("MobiusMap: composition supported for a common center only");
    return MobiusMap{center, lambda * other.lambda};
}

GridField t_phi_transform(const GridField& v, const MobiusMap& phi, double sigma) {
    const Grid& grid = *v.grid;
    const Geometry& g = grid.geometry();
    check_sigma(g.n, sigma);
    const double ex = (g.n - 2.0 * sigma) / (2.0 * g.n);
    GridField out(v.grid);

    if (g.mode == SphereMode::Zonal) {
        if (std::abs(std::abs(phi.center[g.n]) - 1.0) > 1e-12)
            throw std::invalid_argument("t_phi_transform: zonal grids need an axial center");
        for (std::size_t i = 0; i < grid.node_count(); ++i) {
            const auto xi = grid.node_coords(i);
            const auto yi = phi.apply(xi);
            out.values[i] = grid.interpolate(v.values, yi[g.n]) * std::pow(phi.factor(xi), ex);
        }
        return out;
    }
    for (std::size_t i = 0; i < grid.node_count(); ++i) {
        const auto xi = grid.node_coords(i);
        const auto yi = phi.apply(xi);
        const double phj = std::atan2(yi[1], yi[0]);
        out.values[i] = grid.interpolate(v.values, yi[2], phj) * std::pow(phi.factor(xi), ex);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Bubbles

double bubble_sphere_value(int n, double sigma, double lambda, double cos_dist) {
    const double denom = 2.0 + (lambda * lambda - 1.0) * (1.0 - cos_dist);
    return std::pow(2.0 * lambda / denom, 0.5 * (n - 2.0 * sigma));
}

GridField bubble_sphere(const std::vector<double>& xi0, double lambda, double sigma,
                        std::shared_ptr<const Grid> grid) {
    const Geometry& g = grid->geometry();
    check_sigma(g.n, sigma);
    if (!(lambda > 0.0)) throw std::invalid_argument("bubble_sphere: lambda > 0");
    GridField out(grid);
    for (std::size_t i = 0; i < grid->node_count(); ++i) {
        const auto xi = grid->node_coords(i);
        out.values[i] = bubble_sphere_value(g.n, sigma, lambda, dot(xi, xi0));
    }
    return out;
}

double PlanarBubble::value(double r) const {
    const double q = 1.0 + k * lambda * lambda * r * r;
    return amplitude * std::pow(lambda, 0.5 * (n - 2.0 * sigma)) *
           std::pow(q, -0.5 * (n - 2.0 * sigma));
}

PlanarBubble bubble_plane(double K0, double lambda, int n, double sigma) {
    check_sigma(n, sigma);
    if (!(K0 > 0.0)) throw std::invalid_argument("bubble_plane: K0 > 0");
    PlanarBubble b;
    b.n = n;
    b.sigma = sigma;
    b.lambda = lambda;
    b.k = std::pow(K0 * std::exp(0.5 * n * std::log(M_PI) + log_gamma(sigma) -
                                 log_gamma(0.5 * n + sigma)),
                   1.0 / sigma);
    return b;
}

// ---------------------------------------------------------------------------
// Sphere-plane transfer

PlanarPullback::PlanarPullback(GridField v, std::vector<double> center, double sigma)
    : v_(std::move(v)), center_(std::move(center)), sigma_(sigma) {
    const Geometry& g = v_.grid->geometry();
    n_ = g.n;
    check_sigma(n_, sigma_);
    if (center_.size() != static_cast<std::size_t>(n_ + 1))
        throw std::invalid_argument("PlanarPullback: center dimension mismatch");
    if (g.mode == SphereMode::Zonal) {
        if (std::abs(std::abs(center_[n_]) - 1.0) > 1e-12)
            throw std::invalid_argument("PlanarPullback: zonal fields need an axial center");
        radial_ = true;
        flip_ = center_[n_] < 0.0;
    } else {
        radial_ = false;
        flip_ = false;
    }
}

double PlanarPullback::value(const std::vector<double>& x) const {
    const double r2 = norm2(x);
    const double H = std::pow(2.0 / (1.0 + r2), 0.5 * (n_ - 2.0 * sigma_));
    if (radial_) {
        // t-coordinate of F_c(x) relative to the grid axis.
        double t = (1.0 - r2) / (1.0 + r2);
        if (flip_) t = -t;
        return H * v_.grid->interpolate(v_.values, t);
    }
    auto img = stereo_forward(x);
    std::vector<double> south(n_ + 1, 0.0);
    south[n_] = -1.0;
    const auto xi = rotate_between(south, center_, img.point);
    const double phj = std::atan2(xi[1], xi[0]);
    return H * v_.grid->interpolate(v_.values, xi[2], phj);
}

double PlanarPullback::value_radial(double r) const {
    std::vector<double> x(n_, 0.0);
    x[0] = r;
    return value(x);
}

double PlanarPullback::ring_average(double r, int samples) const {
    if (radial_) return value_radial(r);
    double s = 0.0;
    std::vector<double> x(n_, 0.0);
    for (int j = 0; j < samples; ++j) {
        const double a = 2.0 * M_PI * j / samples;
        x[0] = r * std::cos(a);
        x[1] = r * std::sin(a);
        s += value(x);
    }
    return s / samples;
}

PlanarPullback pull_to_plane(const GridField& v, const std::vector<double>& center, double sigma) {
    return PlanarPullback(v, center, sigma);
}

} // namespace fracsphere
