#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <vector>

namespace fracsphere {

/// Surface area of the n-dimensional unit sphere, 2 pi^((n+1)/2) / Gamma((n+1)/2).
double sphere_area(int n);

enum class SphereMode { FullS2, Zonal };

/// Sphere dimension, representation mode and spectral truncation degree.
/// FullS2 carries the full real spherical-harmonic basis and requires n = 2;
/// Zonal restricts to axially symmetric fields (functions of t = cos theta)
/// and works for any n >= 2.
struct Geometry {
    int n = 2;
    SphereMode mode = SphereMode::Zonal;
    int degree_cap = 16;

    void validate() const;
    bool operator==(const Geometry&) const = default;
};

/// Quadrature grid on S^n. Zonal grids are Gauss-Jacobi in t = cos theta with
/// exponent (n-2)/2, and one "node" stands for a full latitude ring (its
/// weight includes the ring volume). FullS2 grids are Gauss-Legendre
/// colatitudes times equispaced longitudes. Immutable after construction.
class Grid {
  public:
    /// rings = 0 picks 2*(degree_cap+1), enough to de-alias quadratic
    /// nonlinearities; analysis up to degree L needs only L+1 rings.
    static std::shared_ptr<const Grid> zonal(const Geometry& g, int rings = 0);
    static std::shared_ptr<const Grid> full_s2(const Geometry& g);

    const Geometry& geometry() const { return geom_; }
    std::size_t node_count() const;
    double weight(std::size_t i) const;
    double node_t(std::size_t i) const;
    double node_phi(std::size_t i) const; // FullS2 only
    std::vector<double> node_coords(std::size_t i) const;
    double weight_sum() const;

    // Zonal layout
    const std::vector<double>& ring_t() const { return t_; }
    const std::vector<double>& ring_weight() const { return w_; }

    // FullS2 layout: node index = itheta * n_phi + jphi
    int n_theta() const { return n_theta_; }
    int n_phi() const { return n_phi_; }

    /// Barycentric Lagrange interpolation (zonal) of a nodal vector at tq.
    double interpolate(const std::vector<double>& values, double tq) const;
    /// Bilinear interpolation (FullS2) at colatitude cos^-1(tq), longitude phiq.
    double interpolate(const std::vector<double>& values, double tq, double phiq) const;

  private:
    Grid() = default;
    Geometry geom_;
    std::vector<double> t_, w_;    // zonal rings / FullS2 colatitudes
    std::vector<double> bary_;     // zonal barycentric weights
    std::vector<double> theta_;    // FullS2 colatitudes (radians, increasing)
    int n_theta_ = 0, n_phi_ = 0;
};

/// A function sampled on a grid, one value per node.
struct GridField {
    std::shared_ptr<const Grid> grid;
    std::vector<double> values;

    GridField() = default;
    explicit GridField(std::shared_ptr<const Grid> g, double fill = 0.0);
    std::size_t size() const { return values.size(); }
    double max() const;
    double min() const;
};

/// Coefficients against the orthonormal real basis. Zonal: one coefficient
/// per degree 0..L. FullS2: (L+1)^2 coefficients, index(k,m) = k^2 + k + m.
struct SpectralField {
    Geometry geom;
    std::vector<double> coeff;

    SpectralField() = default;
    explicit SpectralField(const Geometry& g);
    static std::size_t expected_size(const Geometry& g);
    std::size_t index(int k, int m = 0) const;
    double norm() const;
};

/// Orthonormal zonal basis function of degree k on S^n, evaluated at t.
double zonal_basis(int n, int k, double t);
/// Evaluate all zonal basis degrees 0..kmax at t.
void zonal_basis_all(int n, int kmax, double t, double* out);
/// Values and t-derivatives of the zonal basis, degrees 0..kmax.
void zonal_basis_deriv_all(int n, int kmax, double t, double* out, double* dout);

/// Quadrature analysis of f against the orthonormal basis; exact for
/// band-limited f up to the grid's supported degree. degree_cap < 0 uses the
/// grid geometry's cap; a larger cap is the caller's responsibility (the
/// grid must resolve the corresponding products).
SpectralField analyze(const GridField& f, int degree_cap = -1);

/// Pointwise evaluation of the truncated expansion on the grid (any cap,
/// matching n and mode).
GridField synthesize(const SpectralField& c, std::shared_ptr<const Grid> grid);

/// Evaluate a zonal expansion at arbitrary t.
double synthesize_at(const SpectralField& c, double t);
/// Evaluate a FullS2 expansion at colatitude acos(t), longitude phi.
double synthesize_at(const SpectralField& c, double t, double phi);

double integrate(const GridField& f);
/// Weighted inner product sum_i w_i a_i b_i = int a b dvol.
double inner_product(const GridField& a, const GridField& b);

/// Funk-Hecke multiplier of a zonal kernel at degree k:
///   mu_k = omega_{n-1} int_{-1}^{1} kernel(t) (C_k^nu(t)/C_k^nu(1)) (1-t^2)^((n-2)/2) dt,
/// nu = (n-1)/2. Kernels may be integrably singular at t = 1; the interval is
/// split at 1 - 1e-3 and the singular piece is integrated with the
/// substitution t = 1 - s^2 on geometrically graded panels, refined until
/// successive sums agree. Throws QuadratureError for non-integrable kernels.
double funk_hecke_multiplier(const std::function<double(double)>& kernel, int k,
                             const Geometry& geom);

} // namespace fracsphere
