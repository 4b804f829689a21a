#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "pmlab/modes.hpp"
#include "pmlab/params.hpp"
#include "pmlab/quadrature.hpp"

using namespace pmlab;

TEST_CASE("rho basics") {
    std::vector<double> z0 = {0.0, 0.0};
    CHECK(rho(z0) == doctest::Approx(0.5).epsilon(1e-15));
    std::vector<double> zb = {1.0, 0.0};
    CHECK(rho(zb) == doctest::Approx(0.0).epsilon(1e-15));
    std::vector<double> z = {0.6, 0.0};
    CHECK(rho(z) == doctest::Approx(0.32).epsilon(1e-15));
    std::vector<double> bad = {1.1, 0.0};
    CHECK_THROWS_AS((void)rho(bad), std::domain_error);
}

TEST_CASE("quadrature exactness against Beta-moment oracle") {
    for (auto [N, sigma] : std::vector<std::pair<int, double>>{
             {1, 0.5}, {1, 1.5}, {2, 1.5}, {3, 1.0}, {2, -0.5}}) {
        ModelParams p(N, sigma);
        for (int Q : {3, 8, 14}) {
            auto quad = build_radial_quadrature(p, Q);
            REQUIRE(quad.order == Q);
            for (double r : quad.nodes) {
                CHECK(r > 0.0);
                CHECK(r < 1.0);
            }
            // exact for polynomials in u = r^2 of degree <= 2Q-1
            for (int m = 0; m <= 2 * Q - 1; ++m) {
                double got = 0.0;
                for (int q = 0; q < Q; ++q)
                    got += quad.weights[q] *
                           std::pow(quad.nodes[q] * quad.nodes[q], m);
                double want = oracles::radial_moment(N, sigma, m);
                CHECK(got == doctest::Approx(want).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("random polynomial exactness") {
    oracles::Rng rng(42);
    ModelParams p(2, 0.75);
    const int Q = 10;
    auto quad = build_radial_quadrature(p, Q);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> coeff(2 * Q);  // degree 2Q-1 in u
        for (auto& c : coeff) c = rng.uniform(-1.0, 1.0);
        double got = 0.0;
        for (int q = 0; q < Q; ++q)
            got += quad.weights[q] * poly_eval(coeff, quad.nodes[q] * quad.nodes[q]);
        double want = 0.0;
        for (std::size_t m = 0; m < coeff.size(); ++m)
            want += coeff[m] * oracles::radial_moment(2, 0.75, m);
        CHECK(got == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("ball measures") {
    {
        ModelParams p(1, 0.0);
        auto q = build_radial_quadrature(p, 6);
        CHECK(ball_measure(p, q) == doctest::Approx(2.0).epsilon(1e-12));
    }
    {
        ModelParams p(1, 1.0);
        auto q = build_radial_quadrature(p, 6);
        CHECK(ball_measure(p, q) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    }
    {
        ModelParams p(2, 0.0);
        auto q = build_radial_quadrature(p, 6);
        CHECK(ball_measure(p, q) == doctest::Approx(M_PI).epsilon(1e-12));
    }
}

TEST_CASE("inner_sigma on constants, parity, positivity, scaling") {
    ModelParams p(1, 1.0);
    Grid grid = build_grid(p, Sector::full_1d, 10);
    std::vector<double> one(grid.size(), 1.0);
    CHECK(inner_sigma(grid, one, one) ==
          doctest::Approx(2.0 / 3.0).epsilon(1e-12));

    // odd polynomial against 1 vanishes by parity
    std::vector<double> odd(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double z = grid.nodes[i].x;
        odd[i] = z * z * z - 0.3 * z;
    }
    CHECK(std::abs(inner_sigma(grid, one, odd)) < 1e-14);

    oracles::Rng rng(7);
    std::vector<double> f(grid.size()), g(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        f[i] = rng.uniform(-1.0, 1.0);
        g[i] = rng.uniform(-1.0, 1.0);
    }
    CHECK(inner_sigma(grid, f, g) ==
          doctest::Approx(inner_sigma(grid, g, f)).epsilon(1e-15));
    CHECK(inner_sigma(grid, f, f) >= 0.0);
    // scaling
    std::vector<double> cf(f);
    for (auto& v : cf) v *= -2.5;
    CHECK(inner_sigma(grid, cf, g) ==
          doctest::Approx(-2.5 * inner_sigma(grid, f, g)).epsilon(1e-14));

    std::vector<double> wrong(grid.size() + 1, 0.0);
    CHECK_THROWS_AS((void)inner_sigma(grid, one, wrong), std::invalid_argument);
}

TEST_CASE("normalized mode has unit norm and gradient pairing equals lambda") {
    // <psi, psi>_sigma = 1 and |grad psi|^2_{sigma+1} = lambda (the
    // eigenvalue energy identity), via quadrature only.
    for (auto [N, sigma] : std::vector<std::pair<int, double>>{{1, 1.0},
                                                               {2, 1.5}}) {
        ModelParams p(N, sigma);
        Sector sector = (N == 1) ? Sector::full_1d : Sector::full_2d;
        ModeSet ms = build_mode_set(p, sector, 6, 6);
        Grid grid = build_grid(p, sector, 12, N == 2 ? 20 : 0);
        BasisTables tables(ms, grid);
        int idx = ms.find({0, 1, 1});
        REQUIRE(idx >= 0);
        SpectralField f(ms.size());
        f[idx] = 1.0;
        std::vector<double> val, dr, dt;
        evaluate_field(tables, f, val);
        evaluate_field_gradient(tables, f, dr, dt);
        CHECK(inner_sigma(grid, val, val) == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(inner_grad_sigma1(grid, dr, dt, dr, dt) ==
              doctest::Approx(ms.modes[idx].lambda).epsilon(1e-8));
    }
}

TEST_CASE("gradient pairing: constants and orthogonal coordinates") {
    ModelParams p(2, 1.0);
    Grid grid = build_grid(p, Sector::full_2d, 8, 16);
    std::vector<double> zero(grid.size(), 0.0);
    CHECK(inner_grad_sigma1(grid, zero, zero, zero, zero) == 0.0);

    // f = z1, g = z2: gradients e1 and e2; int e1.e2 dmu = 0.
    // radial/tangential channels: for f = r cos(phi):
    //   df/dr = cos(phi), (1/r) df/dphi = -sin(phi)
    std::vector<double> f_dr(grid.size()), f_dt(grid.size()),
        g_dr(grid.size()), g_dt(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double phi = grid.nodes[i].phi;
        f_dr[i] = std::cos(phi);
        f_dt[i] = -std::sin(phi);
        g_dr[i] = std::sin(phi);
        g_dt[i] = std::cos(phi);
    }
    CHECK(std::abs(inner_grad_sigma1(grid, f_dr, f_dt, g_dr, g_dt)) < 1e-14);
}
