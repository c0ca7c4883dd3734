#pragma once

#include <cmath>
#include <memory>
#include <vector>

#include "fracsphere/sphere.hpp"

namespace fracsphere {

/// Spectrum of the intertwining operator P_sigma of order 2 sigma on S^n:
/// diagonal on spherical harmonics of degree k with eigenvalue
///   e_k = Gamma(k + n/2 + sigma) / Gamma(k + n/2 - sigma),
/// 0 < sigma < n/2. Its inverse is convolution with the spherical Riesz
/// kernel green_constant * |xi - zeta|^(2 sigma - n).
struct ConformalSpectrum {
    int n = 0;
    double sigma = 0.0;
    std::vector<double> eigenvalues; // e_k for k = 0..degree_cap

    double order_constant = 0.0; // c(n,sigma) = e_0 = Gamma(n/2+sigma)/Gamma(n/2-sigma)
    double green_constant = 0.0; // c_{n,sigma} = Gamma((n-2s)/2) / (2^{2s} pi^{n/2} Gamma(s))

    static ConformalSpectrum make(int n, double sigma, int degree_cap);
    double critical_exponent() const { return (n + 2.0 * sigma) / (n - 2.0 * sigma); }
};

/// Multiply coefficient at degree k by e_k.
SpectralField apply_psigma(const SpectralField& f, const ConformalSpectrum& spec);
/// Multiply coefficient at degree k by 1/e_k (the spherical Riesz potential).
SpectralField apply_inverse_psigma(const SpectralField& f, const ConformalSpectrum& spec);

/// Pointwise singular quadrature of
///   green_constant * int f(zeta) |xi - zeta|^(2 sigma - n) dvol(zeta),
/// the direct cross-check of apply_inverse_psigma. Zonal grids reduce each
/// target to a 1D integral in the angle around the target (rings of the
/// band-limited integrand are integrated exactly); FullS2 uses a Nystrom sum
/// with the singular node replaced by the analytic integral over a geodesic
/// cap of equal measure.
GridField riesz_direct(const GridField& f, const ConformalSpectrum& spec);

// ---------------------------------------------------------------------------
// Stereographic projection and Mobius dilations

/// Inverse stereographic projection F: R^n -> S^n \ {north pole},
///   F(x) = (2x/(1+|x|^2), (|x|^2-1)/(1+|x|^2)),   F(0) = south pole,
/// with Jacobian determinant |J_F| = (2/(1+|x|^2))^n.
struct StereoImage {
    std::vector<double> point; // on S^n, length n+1
    double jacobian;
};
StereoImage stereo_forward(const std::vector<double>& x);

/// Inverse of stereo_forward: x = xi' / (1 - xi_{n+1}).
std::vector<double> stereo_inverse(const std::vector<double>& xi);

/// Conformal dilation of S^n with fixed points {center, -center}:
///   phi = F_c o (x -> lambda x) o F_c^{-1},
/// where F_c is the inverse stereographic projection sending 0 to center.
/// Orientation: lambda > 1 expands neighborhoods of the center
/// (|det d phi(center)| = lambda^n), so T_phi(1) = bubble(center, lambda).
struct MobiusMap {
    std::vector<double> center; // unit vector in R^{n+1}
    double lambda = 1.0;

    std::vector<double> apply(const std::vector<double>& xi) const;
    /// |det d phi(xi)| = (2 lambda / ((1+lambda^2) + (1-lambda^2) <xi,center>))^n
    double factor(const std::vector<double>& xi) const;
    MobiusMap composed_with(const MobiusMap& other) const; // same center only
};

/// (v o phi) |det d phi|^{(n-2 sigma)/(2n)} sampled on v's grid. On zonal
/// grids the center must lie on the symmetry axis.
GridField t_phi_transform(const GridField& v, const MobiusMap& phi, double sigma);

// ---------------------------------------------------------------------------
// Bubbles

/// Extremal family of the sharp Sobolev inequality on S^n:
///   v_{xi0,lambda}(xi) = (2 lambda / (2 + (lambda^2-1)(1 - cos d(xi,xi0))))^{(n-2 sigma)/2}.
double bubble_sphere_value(int n, double sigma, double lambda, double cos_dist);
GridField bubble_sphere(const std::vector<double>& xi0, double lambda, double sigma,
                        std::shared_ptr<const Grid> grid);

/// Planar bubble solving u = int K0 u^{(n+2s)/(n-2s)} |x-y|^{2s-n} dy:
///   u(x) = lambda^{(n-2s)/2} (1 + k lambda^2 |x-x0|^2)^{-(n-2s)/2},
///   k = (K0 pi^{n/2} Gamma(s) / Gamma(n/2+s))^{1/s}.
struct PlanarBubble {
    int n;
    double sigma;
    double k;
    double lambda;
    double amplitude = 1.0;

    double value(double r) const; // centered at x0 = 0
};
PlanarBubble bubble_plane(double K0, double lambda, int n, double sigma);

// ---------------------------------------------------------------------------
// Sphere-to-plane transfer

/// Planar representative u(x) = H(x) v(F_c(x)), H = (2/(1+|x|^2))^{(n-2s)/2},
/// of a field v on S^n, stereographically centered at a chosen point
/// (F_c(0) = center). Values off the grid come from barycentric (zonal) or
/// bilinear (FullS2) interpolation.
class PlanarPullback {
  public:
    PlanarPullback(GridField v, std::vector<double> center, double sigma);

    double value(const std::vector<double>& x) const;
    /// Value at x = r * e1.
    double value_radial(double r) const;
    /// Average over the sphere |x| = r; exact single evaluation when the
    /// configuration is radial (zonal field, axial center).
    double ring_average(double r, int samples = 64) const;

    int dimension() const { return n_; }
    double sigma() const { return sigma_; }
    bool radial() const { return radial_; }

  private:
    GridField v_;
    std::vector<double> center_;
    double sigma_;
    int n_;
    bool radial_;
    bool flip_; // zonal: center at south pole (t -> -t)
};

PlanarPullback pull_to_plane(const GridField& v, const std::vector<double>& center, double sigma);

/// Rotation of R^{n+1} taking unit vector a to unit vector b (acts in
/// span{a,b}, identity on the orthogonal complement).
std::vector<double> rotate_between(const std::vector<double>& a, const std::vector<double>& b,
                                   const std::vector<double>& x);

/// Inverse transfer: v(xi) = u(F_c^{-1}(xi)) / H(F_c^{-1}(xi)) sampled on grid.
/// PlanarFn maps std::vector<double> (a point of R^n) to double.
template <typename PlanarFn>
GridField push_to_sphere(PlanarFn&& u, const std::vector<double>& center, double sigma,
                         std::shared_ptr<const Grid> grid) {
    const Geometry& g = grid->geometry();
    const int n = g.n;
    std::vector<double> south(n + 1, 0.0);
    south[n] = -1.0;
    GridField out(grid);
    for (std::size_t i = 0; i < grid->node_count(); ++i) {
        const auto xi = rotate_between(center, south, grid->node_coords(i));
        const auto x = stereo_inverse(xi);
        double r2 = 0.0;
        for (double c : x) r2 += c * c;
        const double H = std::pow(2.0 / (1.0 + r2), 0.5 * (n - 2.0 * sigma));
        out.values[i] = u(x) / H;
    }
    return out;
}

} // namespace fracsphere
