#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "pmlab/manifold.hpp"

using namespace pmlab;

namespace {

struct Setup {
    Discretization disc;
    ManifoldConfig mc;
};

Setup make_setup(int K, double dt = 5e-3) {
    ModelParams p(1, 1.0);
    Discretization disc = make_discretization(p, Sector::full_1d, 10, -1, 2.0);
    SolverConfig solver;
    solver.dt = dt;
    solver.truncation = TruncationConfig(0.25, 0.25);
    ManifoldConfig mc = make_manifold_config(disc, K, 0.01, 0.0, 6, 50, solver);
    return {std::move(disc), mc};
}

}  // namespace

TEST_CASE("manifold config: Lambda constants from the spectrum") {
    auto [disc, mc] = make_setup(1);
    // N=1, sigma=1: distinct eigenvalues 0, 2, 5, 9, ...
    CHECK(mc.Lambda_c == doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
    CHECK(mc.Lambda_s == doctest::Approx(std::exp(-5.0)).epsilon(1e-14));
    CHECK(mc.Lambda_s + mc.eps_gap < mc.Lambda_minus);
    CHECK(mc.Lambda_minus < mc.Lambda_c - mc.eps_gap);
    CHECK(mc.Lambda_plus > 1.0 + mc.eps_gap);
}

TEST_CASE("split: orthogonal decomposition, recombination, idempotence") {
    auto [disc, mc] = make_setup(1);
    SpectralField f = random_field(disc, 3, 0.05, 0.05);
    SplitField s = split(disc, mc, f);
    CHECK((s.recombine() - f).l2_norm() == 0.0);
    // orthogonality in the coefficient (L^2_sigma) inner product
    double dot = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
        dot += s.center[i] * s.stable[i];
    CHECK(dot == 0.0);
    // center part = modes with lambda <= lambda_1 = 2 (constant, z)
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (disc.modes.modes[i].lambda <= 2.0 + 1e-12)
            CHECK(s.center[i] == f[i]);
        else
            CHECK(s.stable[i] == f[i]);
    }
    // P_c o P_c = P_c
    SpectralField pc = project_center(disc, mc, f);
    CHECK((project_center(disc, mc, pc) - pc).l2_norm() == 0.0);
}

TEST_CASE("time-one map: fixed points and linearization") {
    auto [disc, mc] = make_setup(1);

    SpectralField zero(disc.n_modes());
    CHECK(time_one_map(zero, disc, mc).l2_norm() == 0.0);

    // constants are equilibria
    SpectralField c(disc.n_modes());
    c[0] = 0.07;
    SpectralField Sc = time_one_map(c, disc, mc);
    CHECK(std::abs(Sc[0] - 0.07) < 1e-10);
    for (std::size_t i = 1; i < Sc.size(); ++i) CHECK(std::abs(Sc[i]) < 1e-10);

    // pure tiny mode: S(eps psi) = e^{-lambda} eps psi + O(eps^2)
    int i2 = disc.modes.find({0, 1, 1});
    REQUIRE(i2 >= 0);
    double lambda = disc.modes.modes[i2].lambda;
    for (double eps : {1e-4, 1e-3}) {
        SpectralField m(disc.n_modes());
        m[i2] = eps;
        SpectralField Sm = time_one_map(m, disc, mc);
        CHECK(std::abs(Sm[i2] - std::exp(-lambda) * eps) <= 20.0 * eps * eps);
    }
}

TEST_CASE("remainder map: zeros and quadratic smallness") {
    auto [disc, mc] = make_setup(1);

    SpectralField zero(disc.n_modes());
    CHECK(remainder_map(zero, disc, mc).l2_norm() == 0.0);

    // constants are fixed by both S and L
    SpectralField c(disc.n_modes());
    c[0] = 0.05;
    CHECK(remainder_map(c, disc, mc).l2_norm() < 1e-10);

    // |R(s g)| / s^2 has a finite limit: log-log slope 2 +- 0.2
    SpectralField dir = random_field(disc, 5, 1.0, 1.0);
    std::vector<double> ss = {0.04, 0.02, 0.01, 0.005};
    std::vector<double> rs;
    for (double s : ss) {
        SpectralField g = s * dir;
        rs.push_back(remainder_map(g, disc, mc).l2_norm());
    }
    double slope = std::log(rs.front() / rs.back()) /
                   std::log(ss.front() / ss.back());
    CHECK(slope == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("contraction measurement for R on small pairs") {
    auto [disc, mc] = make_setup(1);
    oracles::Rng rng(9);
    double worst = 0.0;
    for (int i = 0; i < 5; ++i) {
        SpectralField g1 = random_field(disc, 200 + i, 0.02, 0.02);
        SpectralField g2 = g1;
        for (std::size_t j = 0; j < g2.size(); ++j)
            g2[j] += 2e-3 * rng.uniform(-1.0, 1.0);
        double num =
            (remainder_map(g1, disc, mc) - remainder_map(g2, disc, mc))
                .l2_norm();
        worst = std::max(worst, num / (g1 - g2).l2_norm());
    }
    CHECK(worst <= 0.5);
    MESSAGE("measured Lip(R) <= ", worst);
}

TEST_CASE("graph transform: zero and constant center data") {
    auto [disc, mc] = make_setup(1);

    // theta(0) = 0 exactly
    SpectralField zero(disc.n_modes());
    ThetaResult t0 = graph_transform_theta(zero, disc, mc);
    CHECK(t0.theta.l2_norm() == 0.0);

    // constants are equilibria inside W_c: theta(a psi_0) ~ 0
    SpectralField c(disc.n_modes());
    c[0] = 0.05;
    ThetaResult tc = graph_transform_theta(c, disc, mc);
    CHECK(tc.theta.l2_norm() < 1e-9);
}

TEST_CASE("graph transform: quadratic tangency of theta") {
    auto [disc, mc] = make_setup(1, 1e-2);
    mc.solver.truncation = TruncationConfig(0.3, 0.3);
    // center direction, constant-heavy so the backward window stays inside
    // the cutoff plateau across the whole size sweep
    SpectralField dir(disc.n_modes());
    int i1 = disc.modes.find({1, 1, 0});
    REQUIRE(i1 >= 0);
    dir[0] = 1.0;
    dir[i1] = 0.25;
    // normalize to unit C^{0,1} norm on the grid
    {
        std::vector<double> val, dr, dt;
        evaluate_field(disc.tables, dir, val);
        evaluate_field_gradient(disc.tables, dir, dr, dt);
        double sup = 0, lip = 0;
        for (std::size_t g = 0; g < disc.grid.size(); ++g) {
            sup = std::max(sup, std::abs(val[g]));
            lip = std::max(lip, std::abs(dr[g]));
        }
        dir *= 1.0 / (sup + lip);
    }

    // sizes are C^{0,1} norms, matching the quadratic tangency bound
    std::vector<double> sizes = {1e-3, 3.16e-3, 1e-2, 3.16e-2, 1e-1};
    std::vector<double> thetas;
    for (double s : sizes) {
        ThetaResult th = graph_transform_theta(s * dir, disc, mc);
        CHECK(th.iterations > 0);
        thetas.push_back(th.theta.l2_norm());
    }
    // least-squares log-log slope
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        double x = std::log(sizes[i]), y = std::log(thetas[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double n = sizes.size();
    double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    CHECK(slope == doctest::Approx(2.0).epsilon(0.125));
    MESSAGE("theta tangency slope ", slope);

    // window convergence: M and M+2 differ by <= 10% at the largest size
    ManifoldConfig mc8 = mc;
    mc8.window_M = 8;
    ThetaResult a = graph_transform_theta(0.1 * dir, disc, mc);
    ThetaResult b = graph_transform_theta(0.1 * dir, disc, mc8);
    double rel = (a.theta - b.theta).l2_norm() /
                 std::max(1e-300, b.theta.l2_norm());
    CHECK(rel <= 0.10);
    MESSAGE("window M vs M+2 relative change ", rel);
}

TEST_CASE("fiber rate: on-manifold point stays on its own fiber") {
    auto [disc, mc] = make_setup(1, 1e-2);
    SpectralField dir(disc.n_modes());
    int i1 = disc.modes.find({1, 1, 0});
    dir[0] = 0.2;
    dir[i1] = 1.0;
    dir *= 0.02 / dir.l2_norm();
    ThetaResult th = graph_transform_theta(dir, disc, mc);
    SpectralField on_wc = dir + th.theta;
    FiberRateResult fr = fiber_rate(on_wc, disc, mc, 3.0, 0.5, false);
    // companion = itself: separation stays at rounding level
    for (double s : fr.separations) CHECK(s <= 1e-8);
}

TEST_CASE("fiber rate: K=0 and K=1 decay targets") {
    // K = 0: generic small data approaches W_c = constants at rate
    // lambda_1 = sigma+1 or faster
    {
        auto [disc, mc] = make_setup(0, 1e-2);
        SpectralField g = random_field(disc, 41, 0.01, 0.01);
        FiberRateResult fr = fiber_rate(g, disc, mc, 4.0, 0.5, true);
        CHECK(!fr.floor_hit);
        CHECK(fr.fitted_Lambda <= std::exp(-(1.0 + 1.0)) * 1.05);
        MESSAGE("K=0 fitted rate ", fr.fitted_rate);
    }
    // K = 1: mean-adjusted data; fitted Lambda <= e^{-1.9(sigma+1)} * 1.05
    {
        auto [disc, mc] = make_setup(1, 1e-2);
        SpectralField g = random_field(disc, 43, 0.01, 0.01);
        FiberRateResult fr = fiber_rate(g, disc, mc, 4.5, 0.5, true);
        CHECK(!fr.floor_hit);
        CHECK(fr.fitted_Lambda <= std::exp(-1.9 * 2.0) * 1.05);
        MESSAGE("K=1 fitted rate ", fr.fitted_rate, " r2 ", fr.r_squared);
    }
}
