#pragma once

#include <vector>

namespace fracsphere::specfun {

/// One-dimensional Gauss-Jacobi rule for the symmetric weight (1-t^2)^alpha
/// on (-1,1). Immutable after construction; nodes strictly increasing.
struct QuadratureRule1D {
    std::vector<double> nodes;
    std::vector<double> weights;
    double alpha = 0.0;

    double total_weight() const;
    /// Closed-form first moment of the weight, sqrt(pi)*Gamma(a+1)/Gamma(a+3/2).
    static double weight_integral(double alpha);
};

/// ln Gamma(x) for x > 0, Lanczos approximation (g = 7, 9 terms).
/// Relative accuracy ~1e-14 over [1e-3, 1e6]. Throws std::domain_error
/// for x <= 0.
double log_gamma(double x);

/// Gamma(a)/Gamma(b) for a, b > 0. When a - b is an integer of magnitude
/// <= 64 the ratio is evaluated by the recurrence Gamma(z+1) = z Gamma(z),
/// which keeps small half-integer ratios exact; otherwise
/// exp(log_gamma(a) - log_gamma(b)).
double gamma_ratio(double a, double b);

/// Gegenbauer polynomial C_k^alpha(t) by the three-term recurrence,
/// alpha > -1/2, |t| <= 1. The degenerate case alpha = 0 returns the
/// Chebyshev polynomial T_k(t) (the standard limit convention
/// lim C_k^a / a = (2/k) T_k rescaled to T_k itself).
double gegenbauer(int k, double alpha, double t);

/// Orthonormal polynomial of degree k for the weight (1-t^2)^(nu-1/2),
/// i.e. C_k^nu normalized so that its weighted L2 norm on (-1,1) is 1.
/// Requires nu > 0.
double gegenbauer_normalized(int k, double nu, double t);

/// Evaluate gegenbauer_normalized for all degrees 0..kmax at t.
void gegenbauer_normalized_all(int kmax, double nu, double t, double* out);

/// Values and derivatives of the normalized polynomials, degrees 0..kmax.
void gegenbauer_normalized_deriv_all(int kmax, double nu, double t, double* out, double* dout);

/// m-point Gauss-Jacobi rule against (1-t^2)^alpha, alpha >= 0, exact for
/// polynomials of degree <= 2m-1. Nodes by Newton iteration on the
/// orthonormal recurrence with Chebyshev initial guesses (tol 1e-14).
QuadratureRule1D gauss_jacobi(int m, double alpha);

/// m-point Gauss-Chebyshev rule (weight (1-t^2)^(-1/2)); closed form.
/// Internal helper for ring reductions where the Chebyshev weight appears.
QuadratureRule1D gauss_chebyshev(int m);

} // namespace fracsphere::specfun
