#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "pmlab/solver.hpp"
#include "pmlab/transform.hpp"

using namespace pmlab;

TEST_CASE("barenblatt pressure values") {
    CHECK(barenblatt_pressure(1.0, {0.0}) == doctest::Approx(0.5));
    CHECK(barenblatt_pressure(1.0, {1.0}) == 0.0);
    CHECK(barenblatt_pressure(1.0, {1.3}) == 0.0);
    CHECK(barenblatt_pressure(4.0, {1.0}) == doctest::Approx(1.5));
    CHECK(barenblatt_pressure(1.0, {0.6, 0.0}) == doctest::Approx(0.32));
    CHECK_THROWS_AS((void)barenblatt_pressure(0.0, {0.1}),
                    std::invalid_argument);
}

TEST_CASE("jacobian_forward formula") {
    ModelParams p1(1, 1.0), p3(3, 0.5);
    // v = rho: identity map, det = 1
    for (double x : {0.0, 0.3, 0.8}) {
        double v = 0.5 * (1.0 - x * x);
        CHECK(jacobian_forward(v, {-x}, {x}, p1) ==
              doctest::Approx(1.0).epsilon(1e-14));
    }
    // v = (R - |x|^2)/2: det = R^{-N/2}
    double R = 2.3, x0 = 0.7;
    CHECK(jacobian_forward(0.5 * (R - x0 * x0), {-x0}, {x0}, p1) ==
          doctest::Approx(std::pow(R, -0.5)).epsilon(1e-13));
    // x = 0: det = (2v)^{-N/2}
    CHECK(jacobian_forward(0.9, {0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}, p3) ==
          doctest::Approx(std::pow(1.8, -1.5)).epsilon(1e-13));
}

TEST_CASE("jacobian_forward matches finite differences of the map") {
    // Phi_0(x) = x / sqrt(2 v + |x|^2) with an analytic radial v
    ModelParams p(2, 1.0);
    auto v = [](const std::vector<double>& x) {
        double r2 = x[0] * x[0] + x[1] * x[1];
        return 0.5 * (1.1 - r2) + 0.03 * std::exp(-3.0 * r2);
    };
    auto phi = [&](double x, double y, int comp) {
        double val = v({x, y});
        double den = std::sqrt(2.0 * val + x * x + y * y);
        return (comp == 0 ? x : y) / den;
    };
    const double h = 1e-5;
    for (auto [x, y] : std::vector<std::pair<double, double>>{
             {0.3, 0.1}, {0.5, -0.4}, {0.05, 0.7}}) {
        double j00 = (phi(x + h, y, 0) - phi(x - h, y, 0)) / (2 * h);
        double j01 = (phi(x, y + h, 0) - phi(x, y - h, 0)) / (2 * h);
        double j10 = (phi(x + h, y, 1) - phi(x - h, y, 1)) / (2 * h);
        double j11 = (phi(x, y + h, 1) - phi(x, y - h, 1)) / (2 * h);
        double det_fd = j00 * j11 - j01 * j10;
        double gx = (v({x + h, y}) - v({x - h, y})) / (2 * h);
        double gy = (v({x, y + h}) - v({x, y - h})) / (2 * h);
        double det = jacobian_forward(v({x, y}), {gx, gy}, {x, y}, p);
        CHECK(std::abs(det - det_fd) < 1e-6);
    }
}

TEST_CASE("forward map of Barenblatt profiles") {
    ModelParams p(1, 1.0);
    // v_*(1,.) maps to w = 0
    PressureProfile v1 = make_barenblatt_profile(p, Sector::full_1d, 1.0);
    PerturbationProfile w1 = forward_map(v1);
    for (double z : {-0.9, -0.4, 0.0, 0.3, 0.99})
        CHECK(std::abs(w1({z})) < 1e-11);
    CHECK(w1.sup_norm < 1e-10);

    // v_*(R,.) maps to the constant sqrt(R) - 1
    double R = 1.44;
    PressureProfile vR = make_barenblatt_profile(p, Sector::full_1d, R);
    PerturbationProfile wR = forward_map(vR);
    for (double z : {-0.8, 0.0, 0.5, 1.0})
        CHECK(wR({z}) == doctest::Approx(std::sqrt(R) - 1.0).epsilon(1e-10));
}

TEST_CASE("inverse map basics") {
    ModelParams p(1, 1.0);
    // w = 0 gives back rho extended by zero
    PerturbationProfile w0;
    w0.params = p;
    w0.sector = Sector::full_1d;
    w0.eval = [](const std::vector<double>&) { return 0.0; };
    PressureProfile v0 = inverse_map(w0);
    for (double x : {-0.7, 0.0, 0.5})
        CHECK(v0({x}) == doctest::Approx(0.5 * (1 - x * x)).epsilon(1e-11));
    CHECK(v0({1.2}) == 0.0);
    auto [in0, out0] = support_bounds(v0);
    CHECK(in0 == doctest::Approx(1.0));
    CHECK(out0 == doctest::Approx(1.0));

    // w = a gives a Barenblatt of radius-squared (1+a)^2
    double a = 0.12;
    PerturbationProfile wa = w0;
    wa.eval = [a](const std::vector<double>&) { return a; };
    PressureProfile va = inverse_map(wa);
    for (double x : {-1.05, -0.3, 0.0, 0.8})
        CHECK(va({x}) == doctest::Approx(barenblatt_pressure(
                             (1 + a) * (1 + a), {x})).epsilon(1e-10));
    auto [ina, outa] = support_bounds(va);
    CHECK(ina == doctest::Approx(1.0 + a));
    CHECK(outa == doctest::Approx(1.0 + a));

    // w = eps*z in 1D: support endpoints at -(1-eps), (1+eps)
    double eps = 0.08;
    PerturbationProfile we = w0;
    we.eval = [eps](const std::vector<double>& z) { return eps * z[0]; };
    PressureProfile ve = inverse_map(we);
    auto [ine, oute] = support_bounds(ve);
    CHECK(ine == doctest::Approx(1.0 - eps).epsilon(1e-12));
    CHECK(oute == doctest::Approx(1.0 + eps).epsilon(1e-12));
    CHECK(ve({1.0 + eps + 1e-6}) == 0.0);
    CHECK(ve({-(1.0 - eps) - 1e-6}) == 0.0);
    CHECK(ve({-(1.0 - eps) + 1e-3}) > 0.0);
}

TEST_CASE("pointwise identity v - rho = w + w^2/2 at mapped nodes") {
    ModelParams p(1, 1.5);
    PerturbationProfile w;
    w.params = p;
    w.sector = Sector::full_1d;
    w.eval = [](const std::vector<double>& z) {
        return 0.05 * z[0] + 0.02 * (1.0 - 2.0 * z[0] * z[0]);
    };
    PressureProfile v = inverse_map(w);
    for (double z : {-0.95, -0.5, -0.1, 0.0, 0.4, 0.85}) {
        double wz = w({z});
        double x = (1.0 + wz) * z;
        double lhs = v({x}) - 0.5 * (1.0 - x * x);
        double rhs = wz + 0.5 * wz * wz;
        CHECK(std::abs(lhs - rhs) < 1e-10);
    }
}

TEST_CASE("round trips on a radial profile family") {
    // inverse(forward(v)) = v and forward(inverse(w)) = w within 1e-8
    ModelParams p(1, 1.0);
    oracles::Rng rng(21);
    for (int trial = 0; trial < 10; ++trial) {
        double d0 = rng.uniform(0.01, 0.08);   // bump height
        double k = rng.uniform(2.0, 6.0);      // bump width parameter
        double c = rng.uniform(-0.5, 0.5);     // bump center
        auto vf = [d0, k, c](const std::vector<double>& x) {
            double base = 0.5 * (1.0 - x[0] * x[0]);
            double bump = d0 * std::exp(-k * (x[0] - c) * (x[0] - c));
            // taper the bump so the profile still vanishes continuously
            return std::max(0.0, base + bump * base * 2.0);
        };
        PressureProfile v =
            make_pressure_profile(p, Sector::full_1d, vf, 1.0, 1.0);
        PerturbationProfile w = forward_map(v);
        PressureProfile v2 = inverse_map(w);
        double worst = 0.0;
        for (int i = -40; i <= 40; ++i) {
            double x = 0.995 * i / 40.0;
            worst = std::max(worst, std::abs(v2({x}) - vf({x})));
        }
        CHECK(worst < 1e-8);

        // forward(inverse(w)) = w on an analytic perturbation profile
        PerturbationProfile wa;
        wa.params = p;
        wa.sector = Sector::full_1d;
        wa.eval = [d0, k, c](const std::vector<double>& z) {
            return d0 * std::cos(k * (z[0] - c));
        };
        PerturbationProfile w2 = forward_map(inverse_map(wa));
        double worst_w = 0.0;
        for (int i = -40; i <= 40; ++i) {
            double z = 0.999 * i / 40.0;
            worst_w = std::max(worst_w, std::abs(w2({z}) - wa({z})));
        }
        CHECK(worst_w < 1e-8);
    }
}

TEST_CASE("forward-map sup and Lipschitz bounds on a (delta0, eps0) family") {
    ModelParams p(1, 1.0);
    for (double d0 : {0.02, 0.05, 0.1}) {
        for (double scale : {0.5, 1.0}) {
            // v - rho = d0 * scale * smooth bump, Lipschitz constant eps0
            auto vf = [d0, scale](const std::vector<double>& x) {
                double base = 0.5 * (1.0 - x[0] * x[0]);
                double pert = d0 * scale * std::cos(1.5 * x[0]);
                return std::max(0.0, base + pert * (1.0 - x[0] * x[0]));
            };
            PressureProfile v =
                make_pressure_profile(p, Sector::full_1d, vf, 0.9, 1.15);
            // measure delta0 and eps0 of the input
            double delta0 = 0.0, eps0 = 0.0;
            double prev = 0.0;
            for (int i = -200; i <= 200; ++i) {
                double x = 1.08 * i / 200.0;
                double dv = vf({x}) - std::max(0.0, 0.5 * (1 - x * x));
                delta0 = std::max(delta0, std::abs(dv));
                if (i > -200)
                    eps0 = std::max(eps0, std::abs(dv - prev) / (1.08 / 200));
                prev = dv;
            }
            PerturbationProfile w = forward_map(v);
            CHECK(w.sup_norm <= 2.0 * delta0 + 1e-9);
            double lip_bound =
                (1.0 + 2.0 * delta0) * eps0 / (1.0 - 2.0 * delta0 - eps0);
            CHECK(w.lip_seminorm <= lip_bound + 1e-6);
        }
    }
}

TEST_CASE("fold detection") {
    ModelParams p(1, 1.0);
    PerturbationProfile w;
    w.params = p;
    w.sector = Sector::full_1d;
    // steep slope violates 1 + w + z w' > 0 near the boundary
    w.eval = [](const std::vector<double>& z) { return -0.8 * z[0] * z[0]; };
    CHECK_THROWS_AS((void)inverse_map(w), std::invalid_argument);
}

TEST_CASE("forward map rejects non-invertible pressure") {
    // a deep dip makes 2v - x.grad v nonpositive along the ray
    ModelParams p(1, 1.0);
    auto vf = [](const std::vector<double>& x) {
        double base = 0.5 * (1.0 - x[0] * x[0]);
        double dip = 0.45 * std::exp(-80.0 * (x[0] - 0.55) * (x[0] - 0.55));
        return std::max(0.0, base * (1.0 - 1.9 * dip));
    };
    PressureProfile v = make_pressure_profile(p, Sector::full_1d, vf, 1.0, 1.0);
    CHECK_THROWS_AS((void)forward_map(v), std::invalid_argument);
}

TEST_CASE("moments: symmetry zeros and the mass scaling oracle") {
    ModelParams p2(2, 1.5);
    PressureProfile v1 = make_barenblatt_profile(p2, Sector::radial, 1.0);
    auto m1 = pressure_first_moment(v1);
    for (double c : m1) CHECK(c == 0.0);
    CHECK(pressure_second_moment(v1, {1, 0, 0, -1}) == 0.0);

    // mass(v_*(R)) / mass(v_*(1)) = R^{sigma+1+N/2}
    double R = 1.7;
    PressureProfile vR = make_barenblatt_profile(p2, Sector::radial, R);
    double ratio = pressure_mass(vR) / pressure_mass(v1);
    double want = std::pow(R, p2.sigma + 1.0 + 0.5 * p2.dim);
    CHECK(ratio == doctest::Approx(want).epsilon(1e-7));

    // the pullback route agrees with the direct physical-grid quadrature
    ModelParams p1(1, 1.5);
    Discretization disc = make_discretization(p1, Sector::full_1d, 8, -1, 2.0);
    SpectralField f(disc.n_modes());
    f[0] = 0.05;
    if (disc.n_modes() > 3) {
        f[2] = 0.02;
        f[3] = 0.004;
    }
    std::vector<double> val, dr, dt;
    evaluate_field(disc.tables, f, val);
    evaluate_field_gradient(disc.tables, f, dr, dt);
    PullbackMoments pm = pullback_moments(disc.grid, val, dr, dt);
    PerturbationProfile w = perturbation_from_field(disc.modes, f);
    PressureProfile v = inverse_map(w);
    CHECK(pm.mass == doctest::Approx(pressure_mass(v, 4096)).epsilon(1e-6));
    CHECK(pm.first[0] ==
          doctest::Approx(pressure_first_moment(v, 4096)[0]).epsilon(1e-4));
}
