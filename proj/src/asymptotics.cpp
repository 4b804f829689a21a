#include "pmlab/asymptotics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace pmlab {

RateFit fit_rate(const std::vector<double>& times,
                 const std::vector<double>& values, double t0, double t1) {
    if (times.size() != values.size())
        throw std::invalid_argument("fit_rate: size mismatch");
    RateFit out;
    out.t0 = t0;
    out.t1 = t1;
    std::vector<double> xs, ys;
    bool nonpositive = false;
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] < t0 - 1e-12 || times[i] > t1 + 1e-12) continue;
        if (!(values[i] > 1e-13)) {
            nonpositive = true;
            continue;
        }
        xs.push_back(times[i]);
        ys.push_back(std::log(values[i]));
    }
    if (xs.size() < 8 || nonpositive) out.floor_flag = true;
    if (xs.size() < 2) return out;
    double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    double denom = n * sxx - sx * sx;
    if (denom <= 0) {
        out.floor_flag = true;
        return out;
    }
    double slope = (n * sxy - sx * sy) / denom;
    double intercept = (sy - slope * sx) / n;
    out.exponent = -slope;
    double mean_y = sy / n, ss_tot = 0, ss_res = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double fit = intercept + slope * xs[i];
        ss_tot += (ys[i] - mean_y) * (ys[i] - mean_y);
        ss_res += (ys[i] - fit) * (ys[i] - fit);
    }
    out.r_squared = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
    return out;
}

GridNorms grid_norms(const Discretization& disc, const SpectralField& f,
                     double shift) {
    std::vector<double> val, dr, dt;
    evaluate_field(disc.tables, f, val);
    evaluate_field_gradient(disc.tables, f, dr, dt);
    GridNorms out;
    for (std::size_t g = 0; g < disc.grid.size(); ++g) {
        out.sup_dev = std::max(out.sup_dev, std::abs(val[g] - shift));
        out.lip = std::max(out.lip,
                           std::sqrt(dr[g] * dr[g] + dt[g] * dt[g]));
    }
    return out;
}

SpectralField mass_adjust(const SpectralField& g, const Discretization& disc,
                          const SolverConfig& config, double t_estimate) {
    SolverConfig cfg = config;
    cfg.t_end = t_estimate;
    cfg.sample_dt = t_estimate;
    SpectralField adjusted = g;
    for (int pass = 0; pass < 2; ++pass) {
        TrajectoryRecord rec = evolve(adjusted, disc, cfg);
        if (rec.failed)
            throw std::runtime_error("mass_adjust: evolve failed: " +
                                     rec.failure);
        adjusted[0] -= rec.back().coeffs[0];
    }
    return adjusted;
}

namespace {

// |w(t) - shift(t)|_inf and |grad w|_inf per sample
void deviation_series(const TrajectoryRecord& rec, const Discretization& disc,
                      const std::function<SpectralField(const TrajectorySample&)>&
                          residual_field,
                      std::vector<double>& times, std::vector<double>& sup_dev,
                      std::vector<double>& lip, std::vector<double>* c01) {
    for (const auto& s : rec.samples) {
        SpectralField r = residual_field(s);
        GridNorms n = grid_norms(disc, r);
        times.push_back(s.t);
        sup_dev.push_back(n.sup_dev);
        lip.push_back(n.lip);
        if (c01) c01->push_back(n.sup_dev + n.lip);
    }
}

double relative_err(double measured, double expected) {
    return std::abs(measured - expected) / std::abs(expected);
}

}  // namespace

VerifyReport verify_stability(const SpectralField& g,
                              const Discretization& disc,
                              const SolverConfig& config, double fit_t0,
                              double fit_t1, double rate_tol,
                              double expected_rate) {
    VerifyReport rep;
    rep.name = "T10 stability";
    const double sp1 = disc.params.sigma + 1.0;
    if (expected_rate <= 0.0) expected_rate = sp1;

    TrajectoryRecord rec = evolve(g, disc, config);
    if (rec.failed) {
        rep.add("run completed", 1, 0, 0, false);
        return rep;
    }

    // a = long-time constant, from the constant-mode coefficient
    const double a_coeff = rec.back().coeffs[0];
    const double a_value = a_coeff / std::sqrt(disc.ball_sigma);

    std::vector<double> times, sup_dev, lip;
    deviation_series(
        rec, disc,
        [&](const TrajectorySample& s) {
            SpectralField r = s.coeffs;
            r[0] -= a_coeff;
            return r;
        },
        times, sup_dev, lip, nullptr);

    bool degenerate = sup_dev.front() < 1e-12;  // constant data: no signal
    if (degenerate) {
        rep.add("constant data: a recovered", a_value, a_value, 0.0, true);
        return rep;
    }

    RateFit fit_sup = fit_rate(times, sup_dev, fit_t0, fit_t1);
    rep.add("rate of |w - a|_inf", expected_rate, fit_sup.exponent, rate_tol,
            !fit_sup.floor_flag &&
                relative_err(fit_sup.exponent, expected_rate) <= rate_tol);

    RateFit fit_lip = fit_rate(times, lip, fit_t0, fit_t1);
    rep.add("rate of |grad w|_inf", expected_rate, fit_lip.exponent, rate_tol,
            !fit_lip.floor_flag &&
                relative_err(fit_lip.exponent, expected_rate) <= rate_tol);

    // mean ODE: d/dt int w dmu_sigma = beta int F dmu_{sigma+1}, centered
    // differences at the sample spacing.  Checked from t = 1 on (the window
    // where the smoothing estimates hold); earlier the finite-difference
    // error of fast modes dominates the identity.
    double max_resid = 0.0;
    const double beta = disc.params.beta();
    const double ode_t0 = std::max(1.0, fit_t0);
    for (std::size_t i = 1; i + 1 < rec.samples.size(); ++i) {
        double t = rec.samples[i].t;
        if (t < ode_t0 || t > fit_t1) continue;
        double dt = rec.samples[i + 1].t - rec.samples[i - 1].t;
        double dmean =
            (rec.samples[i + 1].mean_sigma - rec.samples[i - 1].mean_sigma) / dt;
        max_resid = std::max(
            std::abs(dmean - beta * rec.samples[i].F_integral_sigma1),
            max_resid);
    }
    rep.add("mean ODE residual", 0.0, max_resid, 1e-8, max_resid <= 1e-8);

    // monotone mean along the nonlinear flow
    double worst_drop = 0.0;
    for (std::size_t i = 1; i < rec.samples.size(); ++i)
        worst_drop = std::max(worst_drop, rec.samples[i - 1].mean_sigma -
                                              rec.samples[i].mean_sigma);
    rep.add("mean monotone", 0.0, worst_drop, 1e-9, worst_drop <= 1e-9);
    return rep;
}

VerifyReport verify_translation_correction(const SpectralField& g,
                                           const Discretization& disc,
                                           const SolverConfig& config,
                                           double fit_t0, double fit_t1) {
    VerifyReport rep;
    rep.name = "T11 translation correction";
    const double sp1 = disc.params.sigma + 1.0;

    int i1 = disc.modes.find({1, 1, 0});
    if (i1 < 0) {
        rep.add("translation mode present", 1, 0, 0, false);
        return rep;
    }

    SpectralField adj = mass_adjust(g, disc, config, std::max(6.0, config.t_end));
    TrajectoryRecord rec = evolve(adj, disc, config);
    if (rec.failed) {
        rep.add("run completed", 1, 0, 0, false);
        return rep;
    }

    // b from the late-time translation amplitude
    const auto& last = rec.back();
    double b_coeff = std::exp(sp1 * last.t) * last.coeffs[i1];

    if (std::abs(adj.l2_norm()) < 1e-14) {
        rep.add("zero data: b = 0", 0.0, b_coeff, 1e-12,
                std::abs(b_coeff) <= 1e-12);
        return rep;
    }

    // residual after subtracting e^{-(sigma+1)t} b.z
    std::vector<double> times, sup_dev, lip, c01;
    deviation_series(
        rec, disc,
        [&](const TrajectorySample& s) {
            SpectralField r = s.coeffs;
            r[i1] -= b_coeff * std::exp(-sp1 * s.t);
            return r;
        },
        times, sup_dev, lip, &c01);

    RateFit fit = fit_rate(times, c01, fit_t0, fit_t1);
    double bound = 1.9 * sp1;
    rep.add("residual C^{0,1} rate >= 1.9(sigma+1)", bound, fit.exponent, 0.0,
            !fit.floor_flag && fit.exponent >= bound);

    // linear-flow cross-check: b matches the initial projection
    double c1_0 = rec.samples.front().coeffs[i1];
    if (std::abs(c1_0) > 1e-12)
        rep.add("b vs projection at t=0", c1_0, b_coeff, 0.05,
                relative_err(b_coeff, c1_0) <= 0.05);
    return rep;
}

VerifyReport verify_affine_correction(const SpectralField& g,
                                      const Discretization& disc,
                                      const SolverConfig& config) {
    VerifyReport rep;
    rep.name = "T17 affine correction";
    const ModelParams& p = disc.params;
    const double sp1 = p.sigma + 1.0;
    const double beta = p.beta();

    int ic = disc.modes.find({2, 1, 0});
    int is = disc.modes.find({2, 2, 0});
    if (ic < 0 || is < 0 || disc.sector != Sector::full_2d) {
        rep.add("l=2 modes present (2D sector)", 1, 0, 0, false);
        return rep;
    }

    SpectralField adj = mass_adjust(g, disc, config, std::max(4.0, config.t_end));
    TrajectoryRecord rec = evolve(adj, disc, config);
    if (rec.failed) {
        rep.add("run completed", 1, 0, 0, false);
        return rep;
    }

    // amplitude of the l=2 pair decays at 2(sigma+1)
    std::vector<double> times, amp;
    for (const auto& s : rec.samples) {
        times.push_back(s.t);
        amp.push_back(std::hypot(s.coeffs[ic], s.coeffs[is]));
    }
    RateFit fit_amp = fit_rate(times, amp, 0.5, 2.5);
    rep.add("l=2 amplitude rate", 2.0 * sp1, fit_amp.exponent, 0.02,
            !fit_amp.floor_flag &&
                relative_err(fit_amp.exponent, 2.0 * sp1) <= 0.02);

    // A extracted at a time where the signal is still strong
    double T_ext = 0.0;
    double ac = 0.0, as = 0.0;
    for (const auto& s : rec.samples) {
        if (s.t > 3.0) break;
        T_ext = s.t;
        ac = std::exp(2.0 * sp1 * s.t) * s.coeffs[ic];
        as = std::exp(2.0 * sp1 * s.t) * s.coeffs[is];
    }
    (void)T_ext;

    // residual after subtracting the affine prediction
    std::vector<double> rtimes, rsup, rlip, rc01;
    for (const auto& s : rec.samples) {
        SpectralField r = s.coeffs;
        r[ic] -= ac * std::exp(-2.0 * sp1 * s.t);
        r[is] -= as * std::exp(-2.0 * sp1 * s.t);
        GridNorms n = grid_norms(disc, r);
        rtimes.push_back(s.t);
        rsup.push_back(n.sup_dev);
        rlip.push_back(n.lip);
        rc01.push_back(n.sup_dev + n.lip);
    }
    double next_rate = std::min(2.0 * sp1 + p.dim, 3.0 * sp1);
    RateFit fit_res = fit_rate(rtimes, rc01, 0.3, 1.2);
    rep.add("residual rate >= 0.95 min{2(s+1)+N, 3(s+1)}", 0.95 * next_rate,
            fit_res.exponent, 0.0,
            !fit_res.floor_flag && fit_res.exponent >= 0.95 * next_rate);

    // second-moment identity along the trajectory:
    // d/dt m_ij = 2 delta_ij int w dmu_{sigma+1} - 2(sigma+1) m_ij
    //             + (beta+2) int z_i z_j F dmu_{sigma+1}
    const auto& grid = disc.grid;
    std::vector<std::array<double, 3>> mij(rec.samples.size());
    std::vector<std::array<double, 3>> Fij(rec.samples.size());
    std::vector<double> w_s1(rec.samples.size());
    std::vector<double> val, dr, dt;
    for (std::size_t si = 0; si < rec.samples.size(); ++si) {
        evaluate_field(disc.tables, rec.samples[si].coeffs, val);
        evaluate_field_gradient(disc.tables, rec.samples[si].coeffs, dr, dt);
        double m11 = 0, m22 = 0, m12 = 0, ws1 = 0;
        double F11 = 0, F22 = 0, F12 = 0;
        for (std::size_t n = 0; n < grid.size(); ++n) {
            const auto& node = grid.nodes[n];
            double zz[3] = {node.x * node.x, node.y * node.y, node.x * node.y};
            m11 += node.w_sigma * zz[0] * val[n];
            m22 += node.w_sigma * zz[1] * val[n];
            m12 += node.w_sigma * zz[2] * val[n];
            double w1 = node.w_sigma * node.rho;
            ws1 += w1 * val[n];
            double p2 = dr[n] * dr[n] + dt[n] * dt[n];
            double pz = node.r * dr[n];
            double F = config.truncation
                           ? nonlinearity_F_truncated_channels(
                                 val[n], pz, p2, *config.truncation)
                           : nonlinearity_F_channels(val[n], pz, p2,
                                                     config.denominator_floor);
            F11 += w1 * zz[0] * F;
            F22 += w1 * zz[1] * F;
            F12 += w1 * zz[2] * F;
        }
        mij[si] = {m11, m22, m12};
        Fij[si] = {F11, F22, F12};
        w_s1[si] = ws1;
    }
    double max_resid = 0.0;
    for (std::size_t si = 1; si + 1 < rec.samples.size(); ++si) {
        double dtc = rec.samples[si + 1].t - rec.samples[si - 1].t;
        for (int c = 0; c < 3; ++c) {
            double ddt = (mij[si + 1][c] - mij[si - 1][c]) / dtc;
            double delta_ij = (c < 2) ? 1.0 : 0.0;
            double rhs = 2.0 * delta_ij * w_s1[si] - 2.0 * sp1 * mij[si][c] +
                         (beta + 2.0) * Fij[si][c];
            max_resid = std::max(max_resid, std::abs(ddt - rhs));
        }
    }
    rep.add("second-moment identity residual", 0.0, max_resid, 1e-6,
            max_resid <= 1e-6);
    return rep;
}

VerifyReport verify_dilation_correction(const SpectralField& g,
                                        const Discretization& disc,
                                        const SolverConfig& config) {
    VerifyReport rep;
    rep.name = "T14 dilation correction";
    const ModelParams& p = disc.params;
    const double sp1 = p.sigma + 1.0;
    if (!(p.dim < sp1)) {
        rep.add("N < sigma+1 hypothesis", 1, 0, 0, false);
        return rep;
    }
    int id = disc.modes.find({0, 1, 1});
    if (id < 0) {
        rep.add("dilation mode present", 1, 0, 0, false);
        return rep;
    }
    const double lam_d = eigenvalue(p, 0, 1);  // 2(sigma+1)+N

    SpectralField adj = mass_adjust(g, disc, config, std::max(4.0, config.t_end));
    TrajectoryRecord rec = evolve(adj, disc, config);
    if (rec.failed) {
        rep.add("run completed", 1, 0, 0, false);
        return rep;
    }

    std::vector<double> times, amp;
    for (const auto& s : rec.samples) {
        times.push_back(s.t);
        amp.push_back(std::abs(s.coeffs[id]));
    }
    RateFit fit_amp = fit_rate(times, amp, 0.25, 1.75);
    rep.add("leading rate 2(sigma+1)+N", lam_d, fit_amp.exponent, 0.05,
            !fit_amp.floor_flag &&
                relative_err(fit_amp.exponent, lam_d) <= 0.05);

    // c extraction and its sign against the initial projection
    double c_hat = 0.0;
    for (const auto& s : rec.samples) {
        if (s.t > 1.5) break;
        c_hat = std::exp(lam_d * s.t) * s.coeffs[id];
    }
    double c0 = rec.samples.front().coeffs[id];
    if (std::abs(c0) > 1e-12)
        rep.add("sign of c matches initial projection", 1.0,
                (c_hat * c0 > 0) ? 1.0 : -1.0, 0.0, c_hat * c0 > 0);

    // profile shape: the k=1 radial polynomial is exactly 1 - gamma u
    auto poly = radial_eigenpoly(p, 0, 1);
    rep.add("gamma from formula vs k=1 coefficient", p.gamma(), -poly[1],
            1e-12, std::abs(-poly[1] - p.gamma()) <= 1e-12);

    // residual after subtracting the dilation prediction
    std::vector<double> rtimes, rsup, rlip, rc01;
    for (const auto& s : rec.samples) {
        SpectralField r = s.coeffs;
        r[id] -= c_hat * std::exp(-lam_d * s.t);
        GridNorms n = grid_norms(disc, r);
        rtimes.push_back(s.t);
        rc01.push_back(n.sup_dev + n.lip);
    }
    double lam_02 = eigenvalue(p, 0, 2);
    double bound = 0.95 * std::min(lam_02, 2.0 * lam_d);
    RateFit fit_res = fit_rate(rtimes, rc01, 0.2, 0.9);
    rep.add("residual rate", bound, fit_res.exponent, 0.0,
            !fit_res.floor_flag && fit_res.exponent >= bound);
    return rep;
}

MomentSeries moment_series(const TrajectoryRecord& record,
                           const Discretization& disc) {
    MomentSeries out;
    std::vector<double> val, dr, dt;
    const bool two_d = disc.sector == Sector::full_2d;
    const std::vector<double> Mdiag = {1.0, 0.0, 0.0, -1.0};
    const std::vector<double> Moff = {0.0, 1.0, 1.0, 0.0};
    for (const auto& s : record.samples) {
        evaluate_field(disc.tables, s.coeffs, val);
        evaluate_field_gradient(disc.tables, s.coeffs, dr, dt);
        PullbackMoments m =
            pullback_moments(disc.grid, val, dr, dt, two_d ? Mdiag : std::vector<double>{});
        out.times.push_back(s.t);
        out.mass.push_back(m.mass);
        out.first.push_back(m.first);
        if (two_d) {
            out.second_diag.push_back(m.second_tracefree);
            PullbackMoments m2 = pullback_moments(disc.grid, val, dr, dt, Moff);
            out.second_offdiag.push_back(m2.second_tracefree);
        }
    }
    return out;
}

VerifyReport verify_pressure_theorems(const SpectralField& g,
                                      const Discretization& disc,
                                      const SolverConfig& config) {
    VerifyReport rep;
    rep.name = "pressure theorems";
    const ModelParams& p = disc.params;
    const double sp1 = p.sigma + 1.0;

    // mass normalization: the limit constant is driven to zero, so v(t)
    // approaches the unit Barenblatt profile
    SpectralField adj = mass_adjust(g, disc, config, std::max(6.0, config.t_end));
    TrajectoryRecord rec = evolve(adj, disc, config);
    if (rec.failed) {
        rep.add("run completed", 1, 0, 0, false);
        return rep;
    }

    MomentSeries ms = moment_series(rec, disc);

    // mass conservation: relative drift per unit time
    double drift = 0.0;
    for (std::size_t i = 0; i < ms.times.size(); ++i) {
        if (ms.times[i] < 0.5) continue;
        drift = std::max(drift, std::abs(ms.mass[i] / ms.mass[0] - 1.0) /
                                    ms.times[i]);
    }
    rep.add("mass drift per unit time", 0.0, drift, 1e-6, drift <= 1e-6);

    // first moment: e^{(sigma+1)t} M1(t) constant (T12a proof ODE)
    double m1_0 = 0.0;
    for (double c : ms.first.front()) m1_0 = std::max(m1_0, std::abs(c));
    if (m1_0 > 1e-10 * std::abs(ms.mass[0])) {
        double worst = 0.0;
        for (std::size_t i = 0; i < ms.times.size(); ++i) {
            if (ms.times[i] > 4.0) break;
            for (int d = 0; d < p.dim; ++d) {
                double scaled = std::exp(sp1 * ms.times[i]) * ms.first[i][d];
                worst = std::max(worst,
                                 std::abs(scaled - ms.first[0][d]) / m1_0);
            }
        }
        rep.add("first-moment decay law drift", 0.0, worst, 0.01,
                worst <= 0.01);
    } else {
        double worst = 0.0;
        for (std::size_t i = 0; i < ms.times.size(); ++i) {
            if (ms.times[i] > 4.0) break;
            for (int d = 0; d < p.dim; ++d)
                worst = std::max(worst, std::exp(sp1 * ms.times[i]) *
                                            std::abs(ms.first[i][d]));
        }
        rep.add("first moment stays zero (scaled)", 0.0, worst,
                1e-8 * std::abs(ms.mass[0]),
                worst <= 1e-8 * std::abs(ms.mass[0]));
    }

    // second moments (2D): e^{2(sigma+1)t} M2(t) constant (T12b proof ODE)
    if (disc.sector == Sector::full_2d) {
        auto check_second = [&](const std::vector<double>& series,
                                const char* label) {
            double base = std::abs(series.front());
            if (base < 1e-10 * std::abs(ms.mass[0])) return;
            double worst = 0.0;
            for (std::size_t i = 0; i < ms.times.size(); ++i) {
                if (ms.times[i] > 4.0) break;
                double scaled = std::exp(2.0 * sp1 * ms.times[i]) * series[i];
                worst = std::max(worst, std::abs(scaled - series[0]) / base);
            }
            rep.add(label, 0.0, worst, 0.01, worst <= 0.01);
        };
        check_second(ms.second_diag, "second-moment law drift (diag)");
        check_second(ms.second_offdiag, "second-moment law drift (offdiag)");
    }

    // sup-norm convergence to the Barenblatt pressure and the support
    // sandwich (1D full sector: translation-rich data)
    if (disc.sector == Sector::full_1d) {
        int i1 = disc.modes.find({1, 1, 0});
        double b_coeff = 0.0;
        for (const auto& s : rec.samples) {
            if (s.t > 5.0) break;
            if (i1 >= 0) b_coeff = std::exp(sp1 * s.t) * s.coeffs[i1];
        }
        double b_abs = std::abs(b_coeff) * disc.modes.modes[i1].norm_const;

        std::vector<double> times, sup_dev, dev_out, dev_in;
        for (const auto& s : rec.samples) {
            PerturbationProfile w = perturbation_from_field(disc.modes, s.coeffs);
            PressureProfile v = inverse_map(w);
            // parametric sup |v - v_*| over the union of supports
            double sup = 0.0;
            for (int i = -200; i <= 200; ++i) {
                double z = i / 200.0;
                double wv = w({z});
                double x = (1.0 + wv) * z;
                double vv = 0.5 * (1.0 - z * z) * (1.0 + wv) * (1.0 + wv);
                double vstar = barenblatt_pressure(1.0, {x});
                sup = std::max(sup, std::abs(vv - vstar));
            }
            auto [inner, outer] = support_bounds(v);
            if (outer < 1.0)
                sup = std::max(sup, barenblatt_pressure(1.0, {outer}));
            if (inner < 1.0)
                sup = std::max(sup, barenblatt_pressure(1.0, {inner}));
            times.push_back(s.t);
            sup_dev.push_back(sup);
            dev_out.push_back(std::abs(outer - 1.0));
            dev_in.push_back(std::abs(1.0 - inner));
        }
        RateFit fit = fit_rate(times, sup_dev, 1.5, 5.0);
        rep.add("|v - v_*|_inf rate", sp1, fit.exponent, 0.05,
                !fit.floor_flag && relative_err(fit.exponent, sp1) <= 0.05);

        // support sandwich with C fitted on the first half of the run
        const double lam = 1.9 * sp1;
        double C = 0.0;
        for (std::size_t i = 0; i < times.size(); ++i) {
            if (times[i] > 0.5 * times.back()) break;
            double dev = std::max(dev_out[i], dev_in[i]);
            double excess = dev - std::exp(-sp1 * times[i]) * b_abs;
            C = std::max(C, excess / std::exp(-lam * times[i]));
        }
        bool sandwich = true;
        double worst_gap = 0.0;
        for (std::size_t i = 0; i < times.size(); ++i) {
            double bound = std::exp(-sp1 * times[i]) * b_abs +
                           1.1 * C * std::exp(-lam * times[i]) + 1e-8;
            double dev = std::max(dev_out[i], dev_in[i]);
            worst_gap = std::max(worst_gap, dev - bound);
            if (dev > bound) sandwich = false;
        }
        rep.add("support sandwich (fitted C)", C, worst_gap, 0.0, sandwich);
    }
    return rep;
}

}  // namespace pmlab
