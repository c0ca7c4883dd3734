#include <doctest.h>

#include <cmath>
#include <random>

#include "fracsphere/errors.hpp"
#include "fracsphere/sphere.hpp"
#include "fracsphere/specfun.hpp"

using namespace fracsphere;

TEST_CASE("geometry validation") {
    Geometry bad{3, SphereMode::FullS2, 8};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    Geometry ok{2, SphereMode::FullS2, 8};
    CHECK_NOTHROW(ok.validate());
    Geometry z{7, SphereMode::Zonal, 12};
    CHECK_NOTHROW(z.validate());
}

TEST_CASE("sphere_area closed forms") {
    CHECK(sphere_area(1) == doctest::Approx(2.0 * M_PI).epsilon(1e-14));
    CHECK(sphere_area(2) == doctest::Approx(4.0 * M_PI).epsilon(1e-14));
    CHECK(sphere_area(3) == doctest::Approx(2.0 * M_PI * M_PI).epsilon(1e-14));
}

TEST_CASE("zonal grid weight sum equals omega_n for n in {2,3,4,5,7}") {
    for (int n : {2, 3, 4, 5, 7}) {
        Geometry g{n, SphereMode::Zonal, 16};
        auto grid = Grid::zonal(g);
        CHECK(grid->weight_sum() == doctest::Approx(sphere_area(n)).epsilon(1e-10));
    }
}

TEST_CASE("full_s2 grid weight sum") {
    Geometry g{2, SphereMode::FullS2, 12};
    auto grid = Grid::full_s2(g);
    CHECK(grid->node_count() == 13u * 25u);
    CHECK(grid->weight_sum() == doctest::Approx(4.0 * M_PI).epsilon(1e-12));
}

TEST_CASE("analyze constants and first harmonic (zonal)") {
    for (int n : {2, 3, 5}) {
        Geometry g{n, SphereMode::Zonal, 10};
        auto grid = Grid::zonal(g);
        GridField f(grid, 2.5);
        auto c = analyze(f);
        CHECK(c.coeff[0] == doctest::Approx(2.5 * std::sqrt(sphere_area(n))).epsilon(1e-12));
        for (int k = 1; k <= 10; ++k) CHECK(std::abs(c.coeff[k]) < 1e-12);

        GridField h(grid);
        for (std::size_t i = 0; i < grid->node_count(); ++i) h.values[i] = grid->node_t(i);
        auto ch = analyze(h);
        CHECK(std::abs(ch.coeff[1]) > 0.1);
        for (int k = 0; k <= 10; ++k)
            if (k != 1) CHECK(std::abs(ch.coeff[k]) < 1e-12);
    }
}

TEST_CASE("synthesize basics") {
    Geometry g{3, SphereMode::Zonal, 6};
    auto grid = Grid::zonal(g);
    SpectralField zero(g);
    auto f0 = synthesize(zero, grid);
    for (double v : f0.values) CHECK(v == 0.0);

    SpectralField c0(g);
    c0.coeff[0] = 3.0;
    auto fc = synthesize(c0, grid);
    for (double v : fc.values)
        CHECK(v == doctest::Approx(3.0 / std::sqrt(sphere_area(3))).epsilon(1e-13));
}

TEST_CASE("zonal round trips and Parseval") {
    std::mt19937 rng(42);
    std::normal_distribution<double> gauss;
    for (int n : {2, 4}) {
        Geometry g{n, SphereMode::Zonal, 14};
        auto grid = Grid::zonal(g);
        SpectralField c(g);
        for (double& x : c.coeff) x = gauss(rng);
        auto f = synthesize(c, grid);
        auto c2 = analyze(f);
        for (int k = 0; k <= g.degree_cap; ++k)
            CHECK(c2.coeff[k] == doctest::Approx(c.coeff[k]).epsilon(1e-12));
        auto f2 = synthesize(c2, grid);
        for (std::size_t i = 0; i < f.values.size(); ++i)
            CHECK(std::abs(f2.values[i] - f.values[i]) < 1e-12);

        // Parseval: int f^2 = sum of squared coefficients
        double sq = 0.0;
        for (double x : c.coeff) sq += x * x;
        GridField ff = f;
        for (double& v : ff.values) v *= v;
        CHECK(integrate(ff) == doctest::Approx(sq).epsilon(1e-10));
    }
}

TEST_CASE("full_s2 round trip and Parseval on a nonzonal field") {
    std::mt19937 rng(43);
    std::normal_distribution<double> gauss;
    Geometry g{2, SphereMode::FullS2, 9};
    auto grid = Grid::full_s2(g);
    SpectralField c(g);
    for (double& x : c.coeff) x = gauss(rng);
    auto f = synthesize(c, grid);
    auto c2 = analyze(f);
    for (std::size_t i = 0; i < c.coeff.size(); ++i)
        CHECK(c2.coeff[i] == doctest::Approx(c.coeff[i]).epsilon(1e-11));
    double sq = 0.0;
    for (double x : c.coeff) sq += x * x;
    GridField ff = f;
    for (double& v : ff.values) v *= v;
    CHECK(integrate(ff) == doctest::Approx(sq).epsilon(1e-10));
}

TEST_CASE("integrate closed forms") {
    Geometry g2{2, SphereMode::Zonal, 8};
    auto grid2 = Grid::zonal(g2);
    CHECK(integrate(GridField(grid2, 1.0)) == doctest::Approx(4.0 * M_PI).epsilon(1e-13));

    Geometry g3{3, SphereMode::Zonal, 8};
    auto grid3 = Grid::zonal(g3);
    CHECK(integrate(GridField(grid3, 1.0)) == doctest::Approx(2.0 * M_PI * M_PI).epsilon(1e-13));

    GridField odd(grid3);
    for (std::size_t i = 0; i < grid3->node_count(); ++i) odd.values[i] = grid3->node_t(i);
    CHECK(std::abs(integrate(odd)) < 1e-14);
}

TEST_CASE("zonal barycentric interpolation reproduces band-limited fields") {
    Geometry g{3, SphereMode::Zonal, 12};
    auto grid = Grid::zonal(g);
    std::mt19937 rng(7);
    std::normal_distribution<double> gauss;
    SpectralField c(g);
    for (double& x : c.coeff) x = gauss(rng);
    auto f = synthesize(c, grid);
    std::uniform_real_distribution<double> ut(-0.999, 0.999);
    for (int q = 0; q < 200; ++q) {
        const double t = ut(rng);
        CHECK(grid->interpolate(f.values, t) ==
              doctest::Approx(synthesize_at(c, t)).epsilon(1e-11));
    }
}

TEST_CASE("funk_hecke: constant kernel") {
    for (int n : {2, 3, 5}) {
        Geometry g{n, SphereMode::Zonal, 8};
        auto one = [](double) { return 1.0; };
        CHECK(funk_hecke_multiplier(one, 0, g) == doctest::Approx(sphere_area(n)).epsilon(1e-10));
        CHECK(std::abs(funk_hecke_multiplier(one, 1, g)) < 1e-10);
        CHECK(std::abs(funk_hecke_multiplier(one, 3, g)) < 1e-10);
    }
}

TEST_CASE("funk_hecke: |xi-zeta|^{-1} on S^3 at degree 0 equals 16 pi / 3") {
    // Oracle: with t = cos(theta), the kernel is (2-2t)^{-1/2} and the
    // substitution u = theta/2 gives 4 pi int_0^pi 2 sin(u) cos^2(u) du = 16 pi/3.
    Geometry g{3, SphereMode::Zonal, 4};
    auto kernel = [](double t) { return 1.0 / std::sqrt(2.0 - 2.0 * t); };
    CHECK(funk_hecke_multiplier(kernel, 0, g) ==
          doctest::Approx(16.0 * M_PI / 3.0).epsilon(1e-8));
}

TEST_CASE("funk_hecke of the Riesz kernel matches the Gamma-ratio spectrum") {
    struct Case {
        int n;
        double sigma;
    };
    for (auto [n, sigma] : {Case{2, 0.3}, Case{2, 0.5}, Case{3, 1.0}, Case{4, 1.5}}) {
        Geometry g{n, SphereMode::Zonal, 8};
        const double cns = std::exp(std::lgamma(0.5 * (n - 2.0 * sigma)) -
                                    2.0 * sigma * std::log(2.0) - 0.5 * n * std::log(M_PI) -
                                    std::lgamma(sigma));
        auto kernel = [&](double t) { return cns * std::pow(2.0 - 2.0 * t, 0.5 * (2.0 * sigma - n)); };
        for (int k = 0; k <= 8; ++k) {
            const double expect =
                specfun::gamma_ratio(k + 0.5 * n - sigma, k + 0.5 * n + sigma);
            const double got = funk_hecke_multiplier(kernel, k, g);
            CHECK(got == doctest::Approx(expect).epsilon(1e-6));
        }
    }
}

TEST_CASE("funk_hecke flags a non-integrable kernel") {
    Geometry g{2, SphereMode::Zonal, 4};
    auto bad = [](double t) { return std::pow(2.0 - 2.0 * t, -2.0); };
    CHECK_THROWS_AS(funk_hecke_multiplier(bad, 0, g), QuadratureError);
}
