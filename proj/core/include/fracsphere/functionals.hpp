#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fracsphere/conformal.hpp"
#include "fracsphere/sphere.hpp"

namespace fracsphere {

/// Declared critical-point metadata of a prescribed-curvature profile:
/// location, flatness exponent beta, and the coefficients a_j of the local
/// expansion K(y) = K(0) + sum_j a_j |y_j|^beta + R(y).
struct CriticalPoint {
    std::vector<double> xi;
    double beta = 2.0;
    std::vector<double> a;
};

/// The prescribed function K on S^n. Supported kinds: a constant, an affine
/// function of the height coordinate a + b xi_{n+1}, a polynomial in
/// t = cos(theta), or a band-limited spectral expansion. Critical-point and
/// flatness metadata are declared, not verified.
class KProfile {
  public:
    enum class Kind { Constant, AffineHeight, ZonalPolynomial, Spectral };

    static KProfile constant(double c);
    static KProfile affine_height(double a, double b);
    static KProfile zonal_polynomial(std::vector<double> coeffs); // sum c_j t^j
    static KProfile spectral(SpectralField f);

    Kind kind() const { return kind_; }
    bool zonal() const;
    /// Evaluate at a point of R^{n+1} (on the sphere).
    double value(const std::vector<double>& xi) const;
    /// Evaluate as a function of t = cos(theta); valid for zonal profiles.
    double value_t(double t) const;
    /// d/dt of a zonal profile.
    double ddt(double t) const;
    GridField sample(std::shared_ptr<const Grid> grid) const;
    /// Sup of |grad K| over the sphere (tangential gradient).
    double gradient_sup(int n) const;
    double max_on_sphere(int n) const;
    /// Largest coefficient degree (exact for polynomial kinds; the spectral
    /// cap otherwise).
    int degree() const;
    bool antipodally_symmetric(int n) const;

    // Declared metadata
    std::vector<CriticalPoint> critical_points;
    double flatness_order = 0.0;
    bool positive = true;

    // Kind parameters (public for serialization)
    double c0 = 1.0, c1 = 0.0;
    std::vector<double> poly;
    std::optional<SpectralField> spectral_data;

  private:
    Kind kind_ = Kind::Constant;
};

/// int v P_sigma v = sum_k e_k a_k^2.
double energy(const SpectralField& v, const ConformalSpectrum& spec);

/// Fractional Sobolev norm ||(1 - Delta)^{sigma/2} v||_{L^2}; the Laplacian
/// eigenvalue at degree k is -k(k+n-1).
double hs_norm(const SpectralField& v, double sigma);

/// Q_p[v] = int v P_sigma v / (int K |v|^{p+1})^{2/(p+1)}; scale invariant.
double sobolev_quotient(const GridField& v, const KProfile& K, double p,
                        const ConformalSpectrum& spec);

/// Spectral gradient of Q_p at v (gradient of the quadrature-discretized
/// functional, so it matches finite differences of sobolev_quotient exactly).
SpectralField quotient_gradient(const GridField& v, const KProfile& K, double p,
                                const ConformalSpectrum& spec);

/// Kazdan-Warner integral int (grad_{X_j} K) v^{2n/(n-2 sigma)} dvol with
/// X_j the tangential gradient of the coordinate function xi_j, j = 1..n+1.
/// On zonal grids the integrand averages to zero over rings for j <= n.
double kazdan_warner(const GridField& v, const KProfile& K, int j, double sigma);

/// The five constituents of the Pohozaev identity on B_R for
///   u(x) = int_{B_R} K(y) u(y)^p |x-y|^{2 sigma - n} dy + h_R(x):
///   [(n-2s)/2 - n/(p+1)] int K u^{p+1}  - 1/(p+1) int x.gradK u^{p+1}
///     = (n-2s)/2 int K u^p h + int x.gradh K u^p - R/(p+1) int_{dB_R} K u^{p+1}.
struct PohozaevTerms {
    double lhs_volume = 0.0;
    double lhs_kgrad = 0.0;
    double rhs_h = 0.0;
    double rhs_xgradh = 0.0;
    double rhs_boundary = 0.0;
    double residual() const {
        return lhs_volume + lhs_kgrad - (rhs_h + rhs_xgradh + rhs_boundary);
    }
    double largest() const;
};

/// Radial Pohozaev residual. u, K, dK are radial functions on [0, inf);
/// when h/dh are not supplied the tail h_R(r) = int_{B_R^c} K u^p |x-y|^{2s-n}
/// and its radial derivative are computed from u, K by the ring-reduced
/// kernel (cached on the product of the radial rule and the tail rule).
PohozaevTerms pohozaev_residual(const std::function<double(double)>& u,
                                const std::function<double(double)>& K,
                                const std::function<double(double)>& dK, double p, double R,
                                int n, double sigma, int radial_nodes,
                                const std::function<double(double)>* h = nullptr,
                                const std::function<double(double)>* dh = nullptr);

/// Ring-reduced Riesz kernel int_{S^{n-1}} |r e1 - s theta|^{2 sigma - n} dtheta.
double radial_ring_kernel(int n, double sigma, double r, double s);

/// A = 2^{-(n-2s)/2} omega_{n-1} int_0^inf 2^n r^{n-1} (1+r^2)^{-(n+2s)/2} dr.
double expansion_constant_A(int n, double sigma);

/// Critical-exponent quotient of the antipodal two-bubble test function
///   v_beta = v_{1,beta} + v_{2,beta},
///   v_{i,beta} = (sqrt(beta^2-1)/(beta - cos r_i))^{(n-2s)/2},
/// centered at the poles of a zonal grid.
double test_function_quotient(double beta, const KProfile& K, const ConformalSpectrum& spec,
                              std::shared_ptr<const Grid> grid);

struct TestFunctionFit {
    double slope = 0.0;     // of y against (beta-1)^{(n-2s)/2}
    double intercept = 0.0;
    std::vector<double> beta, x, y;
};

/// Least-squares fit of y(beta) = Q[v_beta] K(pole)^{(n-2s)/n} /
/// (P_sigma(1) omega_n^{2s/n} 2^{2s/n}) - 1 against x = (beta-1)^{(n-2s)/2}
/// over [beta_lo, beta_hi]; the slope estimates -A/omega_n.
TestFunctionFit fit_test_function_slope(const KProfile& K, const ConformalSpectrum& spec,
                                        std::shared_ptr<const Grid> grid, double beta_lo,
                                        double beta_hi, int samples);

/// Signed count of critical points with sum_j a_j < 0, weighted by
/// (-1)^{#{a_j < 0}}; the existence hypothesis holds when the count differs
/// from (-1)^n.
struct IndexCountResult {
    bool hypothesis_holds = false;
    long long sum = 0;
};
IndexCountResult index_count_check(const KProfile& K, int n);

} // namespace fracsphere
