#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "fracsphere/specfun.hpp"

using namespace fracsphere::specfun;

TEST_CASE("log_gamma exact points") {
    CHECK(log_gamma(1.0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(log_gamma(5.0) == doctest::Approx(std::log(24.0)).epsilon(1e-14));
    // Gamma(1/2) = sqrt(pi)
    CHECK(log_gamma(0.5) == doctest::Approx(0.5 * std::log(M_PI)).epsilon(1e-14));
    CHECK_THROWS_AS(log_gamma(0.0), std::domain_error);
    CHECK_THROWS_AS(log_gamma(-1.5), std::domain_error);
}

TEST_CASE("log_gamma against libm over [1e-3, 1e6]") {
    // std::lgamma is an independent implementation; spot a log-spaced sweep.
    for (double x = 1e-3; x < 1e6; x *= 1.37) {
        const double ref = std::lgamma(x);
        CHECK(std::abs(log_gamma(x) - ref) <= 1e-13 * std::max(1.0, std::abs(ref)));
    }
}

TEST_CASE("gamma_ratio recurrence path and identities") {
    CHECK(gamma_ratio(2.5, 0.5) == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(gamma_ratio(1.5, 0.5) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(gamma_ratio(7.0, 7.0) == doctest::Approx(1.0).epsilon(1e-15));
    // gamma_ratio(a+1, a) = a
    for (double a = 0.1; a <= 100.0; a *= 1.7)
        CHECK(gamma_ratio(a + 1.0, a) == doctest::Approx(a).epsilon(1e-13));
    // non-integer gap goes through log_gamma
    CHECK(gamma_ratio(3.7, 1.2) ==
          doctest::Approx(std::exp(std::lgamma(3.7) - std::lgamma(1.2))).epsilon(1e-13));
    CHECK_THROWS_AS(gamma_ratio(-1.0, 2.0), std::domain_error);
}

TEST_CASE("gegenbauer recurrence values") {
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> ut(-1.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        const double t = ut(rng);
        const double a = 0.25 + 2.0 * std::abs(ut(rng));
        CHECK(gegenbauer(0, a, t) == 1.0);
        CHECK(gegenbauer(1, a, t) == doctest::Approx(2.0 * a * t).epsilon(1e-14));
        // C_2^{1/2} = Legendre P_2
        CHECK(gegenbauer(2, 0.5, t) == doctest::Approx(0.5 * (3.0 * t * t - 1.0)).epsilon(1e-13));
        // alpha = 0 falls back to Chebyshev T_k
        CHECK(gegenbauer(3, 0.0, t) == doctest::Approx(4.0 * t * t * t - 3.0 * t).epsilon(1e-12));
    }
}

TEST_CASE("gauss_jacobi basic rules") {
    auto r1 = gauss_jacobi(1, 0.0);
    REQUIRE(r1.nodes.size() == 1);
    CHECK(r1.nodes[0] == doctest::Approx(0.0));
    CHECK(r1.weights[0] == doctest::Approx(2.0).epsilon(1e-14));

    auto r2 = gauss_jacobi(2, 0.0);
    double s = 0.0;
    for (int i = 0; i < 2; ++i) s += r2.weights[i] * r2.nodes[i] * r2.nodes[i];
    CHECK(s == doctest::Approx(2.0 / 3.0).epsilon(1e-14));

    // total weight for alpha = 1/2 is pi/2
    auto r3 = gauss_jacobi(8, 0.5);
    CHECK(r3.total_weight() == doctest::Approx(M_PI / 2.0).epsilon(1e-13));
}

TEST_CASE("gauss_jacobi invariants: node ordering, positivity, weight sum") {
    for (double alpha : {0.0, 0.5, 1.0, 1.5, 2.5}) {
        for (int m : {1, 2, 5, 17, 64, 301}) {
            auto r = gauss_jacobi(m, alpha);
            for (int i = 0; i < m; ++i) {
                CHECK(r.weights[i] > 0.0);
                CHECK(r.nodes[i] > -1.0);
                CHECK(r.nodes[i] < 1.0);
                if (i) CHECK(r.nodes[i] > r.nodes[i - 1]);
            }
            const double expect = QuadratureRule1D::weight_integral(alpha);
            CHECK(r.total_weight() == doctest::Approx(expect).epsilon(1e-12));
        }
    }
}

namespace {

// Independent moment oracle: int t^j (1-t^2)^a dt, odd j -> 0,
// even j -> Beta(j/2+1/2, a+1) = Gamma((j+1)/2)Gamma(a+1)/Gamma(j/2+a+3/2).
double monomial_moment(int j, double alpha) {
    if (j % 2 == 1) return 0.0;
    return std::exp(std::lgamma(0.5 * (j + 1)) + std::lgamma(alpha + 1.0) -
                    std::lgamma(0.5 * j + alpha + 1.5));
}

} // namespace

TEST_CASE("gauss_jacobi exactness on random polynomials of degree <= 2m-1") {
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> uc(-1.0, 1.0);
    for (double alpha : {0.0, 0.5, 1.5}) {
        for (int m : {3, 7, 12}) {
            auto r = gauss_jacobi(m, alpha);
            const int deg = 2 * m - 1;
            std::vector<double> c(deg + 1);
            for (double& ci : c) ci = uc(rng);
            double exact = 0.0;
            for (int j = 0; j <= deg; ++j) exact += c[j] * monomial_moment(j, alpha);
            double quad = 0.0;
            for (int i = 0; i < m; ++i) {
                double p = 0.0;
                for (int j = deg; j >= 0; --j) p = p * r.nodes[i] + c[j];
                quad += r.weights[i] * p;
            }
            CHECK(quad == doctest::Approx(exact).epsilon(1e-12));
        }
    }
}

TEST_CASE("gegenbauer orthogonality under its own quadrature") {
    // int C_j^a C_k^a (1-t^2)^{a-1/2} dt = 0 for j != k
    for (double alpha : {0.5, 1.0, 2.0}) {
        auto r = gauss_jacobi(24, alpha - 0.5);
        for (int j = 0; j <= 6; ++j) {
            for (int k = 0; k < j; ++k) {
                double s = 0.0, njj = 0.0, nkk = 0.0;
                for (std::size_t i = 0; i < r.nodes.size(); ++i) {
                    const double cj = gegenbauer(j, alpha, r.nodes[i]);
                    const double ck = gegenbauer(k, alpha, r.nodes[i]);
                    s += r.weights[i] * cj * ck;
                    njj += r.weights[i] * cj * cj;
                    nkk += r.weights[i] * ck * ck;
                }
                CHECK(std::abs(s) / std::sqrt(njj * nkk) <= 1e-10);
            }
        }
    }
}

TEST_CASE("gegenbauer_normalized is orthonormal") {
    for (double nu : {0.5, 1.0, 1.5, 3.0}) {
        auto r = gauss_jacobi(40, nu - 0.5);
        for (int j = 0; j <= 8; ++j) {
            double s = 0.0;
            for (std::size_t i = 0; i < r.nodes.size(); ++i) {
                const double p = gegenbauer_normalized(j, nu, r.nodes[i]);
                s += r.weights[i] * p * p;
            }
            CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("gauss_chebyshev matches the closed-form weight integral") {
    auto r = gauss_chebyshev(16);
    CHECK(r.total_weight() == doctest::Approx(M_PI).epsilon(1e-14));
    double s = 0.0;
    for (int i = 0; i < 16; ++i) s += r.weights[i] * r.nodes[i] * r.nodes[i];
    CHECK(s == doctest::Approx(M_PI / 2.0).epsilon(1e-13));
}
