#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "pmlab/asymptotics.hpp"

using namespace pmlab;

TEST_CASE("fit_rate on synthetic series") {
    // exact exponential
    std::vector<double> ts, vs;
    for (int i = 0; i <= 100; ++i) {
        double t = 0.05 * i;
        ts.push_back(t);
        vs.push_back(std::exp(-3.0 * t));
    }
    RateFit f = fit_rate(ts, vs, 0.0, 5.0);
    CHECK(!f.floor_flag);
    CHECK(f.exponent == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(f.r_squared == doctest::Approx(1.0).epsilon(1e-10));

    // modulated exponential stays within 0.02 absolute
    std::vector<double> vm;
    for (double t : ts) vm.push_back(std::exp(-3.0 * t) * (1 + 0.01 * std::sin(t)));
    RateFit fm = fit_rate(ts, vm, 0.0, 5.0);
    CHECK(std::abs(fm.exponent - 3.0) <= 0.02);

    // constant series: zero exponent
    std::vector<double> vc(ts.size(), 0.7);
    RateFit fc = fit_rate(ts, vc, 0.0, 5.0);
    CHECK(std::abs(fc.exponent) <= 1e-12);

    // nonpositive values raise the floor flag
    std::vector<double> vz(ts.size(), 0.0);
    RateFit fz = fit_rate(ts, vz, 0.0, 5.0);
    CHECK(fz.floor_flag);

    // too few samples in the window
    RateFit ff = fit_rate(ts, vs, 0.0, 0.2);
    CHECK(ff.floor_flag);
}

namespace {

Discretization disc_1d(double sigma, Sector sector = Sector::full_1d) {
    return make_discretization(ModelParams(1, sigma), sector, 10, -1, 2.0);
}

SolverConfig quick_config(double t_end) {
    SolverConfig cfg;
    cfg.dt = 2e-3;
    cfg.t_end = t_end;
    cfg.sample_dt = 1e-2;
    cfg.truncation = TruncationConfig(0.25, 0.25);
    return cfg;
}

}  // namespace

TEST_CASE("mass adjustment drives the limit mean to zero") {
    Discretization disc = disc_1d(1.0);
    SolverConfig cfg = quick_config(6.0);
    SpectralField g = random_field(disc, 51, 0.02, 0.02);
    SpectralField adj = mass_adjust(g, disc, cfg);
    SolverConfig cfg2 = cfg;
    cfg2.t_end = 8.0;
    cfg2.sample_dt = 8.0;
    TrajectoryRecord rec = evolve(adj, disc, cfg2);
    CHECK(std::abs(rec.back().mean_sigma) < 1e-10);
}

TEST_CASE("T10 verification at reduced scale") {
    Discretization disc = disc_1d(1.0);
    SolverConfig cfg = quick_config(6.0);
    SpectralField g = random_field(disc, 53, 0.02, 0.02);
    VerifyReport rep = verify_stability(g, disc, cfg);
    for (const auto& r : rep.rows)
        MESSAGE(r.quantity, ": expected ", r.expected, " measured ", r.measured,
                r.pass ? " pass" : " FAIL");
    CHECK(rep.pass());

    // constant data: a recovered, no rate signal
    SpectralField c(disc.n_modes());
    c[0] = 0.05;
    VerifyReport repc = verify_stability(c, disc, cfg);
    CHECK(repc.pass());
}

TEST_CASE("T10 on radial data: dilation-dominated decay") {
    // radial sector has no translation mode; the leading rate is the
    // dilation eigenvalue 2(sigma+1)+N, consistent with the <= bound
    Discretization disc = disc_1d(1.0, Sector::radial);
    SolverConfig cfg = quick_config(3.0);
    int id = disc.modes.find({0, 1, 1});
    REQUIRE(id >= 0);
    SpectralField g(disc.n_modes());
    g[id] = 0.01;
    double lam = eigenvalue(disc.params, 0, 1);
    VerifyReport rep =
        verify_stability(g, disc, cfg, 0.25, 1.75, 0.05, lam);
    for (const auto& r : rep.rows)
        MESSAGE(r.quantity, ": expected ", r.expected, " measured ", r.measured,
                r.pass ? " pass" : " FAIL");
    CHECK(rep.pass());
}

TEST_CASE("T11 verification at reduced scale") {
    Discretization disc = disc_1d(1.0);
    SolverConfig cfg = quick_config(5.0);
    SpectralField g = random_field(disc, 57, 0.02, 0.02);
    VerifyReport rep = verify_translation_correction(g, disc, cfg, 1.0, 3.0);
    for (const auto& r : rep.rows)
        MESSAGE(r.quantity, ": expected ", r.expected, " measured ", r.measured,
                r.pass ? " pass" : " FAIL");
    CHECK(rep.pass());

    // pure translation data: residual drops to the resolution floor fast
    SpectralField gt(disc.n_modes());
    int i1 = disc.modes.find({1, 1, 0});
    gt[i1] = 0.01;
    VerifyReport rept = verify_translation_correction(gt, disc, cfg, 0.5, 2.0);
    // b recovered close to the initial projection
    bool found = false;
    for (const auto& r : rept.rows)
        if (r.quantity.find("projection") != std::string::npos) {
            CHECK(r.pass);
            found = true;
        }
    CHECK(found);
}

TEST_CASE("T14 verification at reduced scale") {
    Discretization disc = disc_1d(1.5, Sector::radial);
    SolverConfig cfg = quick_config(2.5);
    SpectralField g = random_field(disc, 59, 0.02, 0.02);
    VerifyReport rep = verify_dilation_correction(g, disc, cfg);
    for (const auto& r : rep.rows)
        MESSAGE(r.quantity, ": expected ", r.expected, " measured ", r.measured,
                r.pass ? " pass" : " FAIL");
    CHECK(rep.pass());
}

TEST_CASE("T17 verification at reduced scale (N=2)") {
    ModelParams p(2, 1.5);
    Discretization disc = make_discretization(p, Sector::full_2d, 6, 4, 2.0);
    SolverConfig cfg;
    cfg.dt = 2e-3;
    cfg.t_end = 4.0;
    cfg.sample_dt = 1e-2;
    cfg.truncation = TruncationConfig(0.25, 0.25);
    cfg.erk2 = true;
    SpectralField g = random_field(disc, 61, 0.02, 0.02,
                                   [](const EigenIndex& i) { return i.l % 2 == 0; });
    VerifyReport rep = verify_affine_correction(g, disc, cfg);
    for (const auto& r : rep.rows)
        MESSAGE(r.quantity, ": expected ", r.expected, " measured ", r.measured,
                r.pass ? " pass" : " FAIL");
    CHECK(rep.pass());
}

TEST_CASE("pressure theorems at reduced scale (N=1)") {
    Discretization disc = disc_1d(1.0);
    SolverConfig cfg = quick_config(5.0);
    cfg.erk2 = true;
    // translation-rich small data
    SpectralField g = random_field(disc, 63, 0.015, 0.015);
    int i1 = disc.modes.find({1, 1, 0});
    g[i1] += 0.005;
    VerifyReport rep = verify_pressure_theorems(g, disc, cfg);
    for (const auto& r : rep.rows)
        MESSAGE(r.quantity, ": expected ", r.expected, " measured ", r.measured,
                r.pass ? " pass" : " FAIL");
    CHECK(rep.pass());
}

TEST_CASE("rate ordering across the verifier family") {
    // sigma = 1.5 shared: sigma+1 < 2(sigma+1) < min{2(sigma+1)+N, 3(sigma+1)}
    const double sigma = 1.5;

    // leading translation rate (1D full)
    Discretization d1 = disc_1d(sigma);
    SolverConfig cfg = quick_config(3.0);
    int i1 = d1.modes.find({1, 1, 0});
    SpectralField g1(d1.n_modes());
    g1[i1] = 0.01;
    TrajectoryRecord r1 = evolve(g1, d1, cfg);
    std::vector<double> ts, amp;
    for (const auto& s : r1.samples) {
        ts.push_back(s.t);
        amp.push_back(std::abs(s.coeffs[i1]));
    }
    double rate_translation = fit_rate(ts, amp, 0.25, 2.0).exponent;

    // affine rate (N=2, l=2 mode)
    ModelParams p2(2, sigma);
    Discretization d2 = make_discretization(p2, Sector::full_2d, 6, 4, 2.0);
    int i2 = d2.modes.find({2, 1, 0});
    SpectralField g2(d2.n_modes());
    g2[i2] = 0.01;
    TrajectoryRecord r2 = evolve(g2, d2, cfg);
    ts.clear();
    amp.clear();
    for (const auto& s : r2.samples) {
        ts.push_back(s.t);
        amp.push_back(std::abs(s.coeffs[i2]));
    }
    double rate_affine = fit_rate(ts, amp, 0.25, 1.5).exponent;

    // dilation rate (radial, N=1)
    Discretization dr = disc_1d(sigma, Sector::radial);
    int id = dr.modes.find({0, 1, 1});
    SpectralField gd(dr.n_modes());
    gd[id] = 0.01;
    TrajectoryRecord r3 = evolve(gd, dr, cfg);
    ts.clear();
    amp.clear();
    for (const auto& s : r3.samples) {
        ts.push_back(s.t);
        amp.push_back(std::abs(s.coeffs[id]));
    }
    double rate_dilation = fit_rate(ts, amp, 0.25, 1.5).exponent;

    MESSAGE("rates: ", rate_translation, " < ", rate_affine, " < ",
            rate_dilation);
    CHECK(rate_translation < rate_affine);
    CHECK(rate_affine < rate_dilation);
    CHECK(rate_translation == doctest::Approx(sigma + 1.0).epsilon(0.02));
    CHECK(rate_affine == doctest::Approx(2 * (sigma + 1.0)).epsilon(0.02));
    CHECK(rate_dilation ==
          doctest::Approx(2 * (sigma + 1.0) + 1.0).epsilon(0.02));
}
