#include "pmlab/manifold.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace pmlab {

namespace {

// distinct eigenvalues of the mode set in increasing order
std::vector<double> distinct_eigenvalues(const ModeSet& ms) {
    std::set<double> vals;
    for (const auto& m : ms.modes) vals.insert(m.lambda);
    return {vals.begin(), vals.end()};
}

bool is_center_mode(const ModeSet& ms, std::size_t i, double lambda_K) {
    return ms.modes[i].lambda <= lambda_K + 1e-12;
}

}  // namespace

ManifoldConfig make_manifold_config(const Discretization& disc, int K,
                                    double eps_gap, double lambda_minus,
                                    int window_M, int n_iter,
                                    SolverConfig solver) {
    auto distinct = distinct_eigenvalues(disc.modes);
    if (K + 1 >= static_cast<int>(distinct.size()))
        throw std::invalid_argument(
            "make_manifold_config: mode set too small for this K");
    ManifoldConfig mc;
    mc.K = K;
    mc.Lambda_c = std::exp(-distinct[K]);
    mc.Lambda_s = std::exp(-distinct[K + 1]);
    if (eps_gap <= 0.0) eps_gap = 0.02 * (mc.Lambda_c - mc.Lambda_s);
    mc.eps_gap = eps_gap;
    if (lambda_minus > 0.0)
        mc.Lambda_minus = std::exp(-lambda_minus);
    else
        mc.Lambda_minus = std::sqrt(mc.Lambda_s * mc.Lambda_c);
    if (!(mc.Lambda_s + eps_gap < mc.Lambda_minus &&
          mc.Lambda_minus < mc.Lambda_c - eps_gap))
        throw std::invalid_argument(
            "make_manifold_config: Lambda_minus outside the gap window");
    mc.Lambda_plus = 1.0 + 2.0 * eps_gap;
    mc.window_M = window_M;
    mc.n_iter = n_iter;
    if (!solver.truncation)
        solver.truncation = TruncationConfig(0.25, 0.25);
    solver.t_end = 1.0;
    solver.sample_dt = 1.0;
    mc.solver = solver;
    return mc;
}

SplitField split(const Discretization& disc, const ManifoldConfig& mc,
                 const SpectralField& f) {
    auto distinct = distinct_eigenvalues(disc.modes);
    double lambda_K = distinct[mc.K];
    SplitField out;
    out.center = SpectralField(f.size());
    out.stable = SpectralField(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (is_center_mode(disc.modes, i, lambda_K))
            out.center[i] = f[i];
        else
            out.stable[i] = f[i];
    }
    return out;
}

SpectralField project_center(const Discretization& disc,
                             const ManifoldConfig& mc, const SpectralField& f) {
    return split(disc, mc, f).center;
}

SpectralField project_stable(const Discretization& disc,
                             const ManifoldConfig& mc, const SpectralField& f) {
    return split(disc, mc, f).stable;
}

double split_norm(const Discretization& disc, const ManifoldConfig& mc,
                  const SpectralField& f) {
    SplitField s = split(disc, mc, f);
    return std::max(s.center.l2_norm(), s.stable.l2_norm());
}

SpectralField time_one_map(const SpectralField& g, const Discretization& disc,
                           const ManifoldConfig& mc) {
    if (!mc.solver.truncation)
        throw std::invalid_argument("time_one_map: truncated dynamics required");
    SolverConfig cfg = mc.solver;
    cfg.t_end = 1.0;
    cfg.sample_dt = 1.0;
    TrajectoryRecord rec = evolve(g, disc, cfg);
    if (rec.failed)
        throw std::runtime_error("time_one_map: solver failed: " + rec.failure);
    return rec.back().coeffs;
}

SpectralField remainder_map(const SpectralField& g, const Discretization& disc,
                            const ManifoldConfig& mc) {
    return time_one_map(g, disc, mc) - heat_semigroup(disc.modes, g, 1.0);
}

namespace {

// L_c^{-1}: multiply center coefficients by e^{+lambda}; zero elsewhere.
SpectralField center_backward(const Discretization& disc, double lambda_K,
                              const SpectralField& f) {
    SpectralField out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i)
        if (is_center_mode(disc.modes, i, lambda_K))
            out[i] = std::exp(disc.modes.modes[i].lambda) * f[i];
    return out;
}

double sequence_norm(const Discretization& disc, const ManifoldConfig& mc,
                     const std::vector<SpectralField>& w) {
    const int M = mc.window_M;
    double nrm = 0.0;
    for (int k = -M; k <= M; ++k) {
        double weight = (k >= 0) ? std::pow(mc.Lambda_plus, -k)
                                 : std::pow(mc.Lambda_minus, -k);
        nrm = std::max(nrm, weight * split_norm(disc, mc, w[k + M]));
    }
    return nrm;
}

}  // namespace

ThetaResult graph_transform_theta(const SpectralField& g_center,
                                  const Discretization& disc,
                                  const ManifoldConfig& mc) {
    const int M = mc.window_M;
    auto distinct = distinct_eigenvalues(disc.modes);
    const double lambda_K = distinct[mc.K];
    const std::size_t nm = disc.n_modes();
    if (g_center.size() != nm)
        throw std::invalid_argument("graph_transform_theta: field size");

    // slots w_{-M} .. w_{M}
    std::vector<SpectralField> w(2 * M + 1, SpectralField(nm));
    std::vector<SpectralField> w_new(2 * M + 1, SpectralField(nm));

    ThetaResult result;
    double prev_diff = -1.0;
    for (int iter = 0; iter < mc.n_iter; ++iter) {
        // S at all slots needed this sweep (w_k for k in [-M, M-1])
        std::vector<SpectralField> S_of(2 * M + 1, SpectralField(nm));
        for (int k = -M; k <= M - 1; ++k)
            S_of[k + M] = time_one_map(w[k + M], disc, mc);

        for (int k = -M; k <= M; ++k) {
            if (k <= -1) {
                // R(w_k) = S(w_k) - L w_k
                SpectralField R_k =
                    S_of[k + M] - heat_semigroup(disc.modes, w[k + M], 1.0);
                SpectralField back = center_backward(
                    disc, lambda_K, w[k + 1 + M] - R_k);
                if (k == -M) {
                    // center-only closure: stable part set to zero
                    w_new[k + M] = back;
                } else {
                    w_new[k + M] =
                        project_stable(disc, mc, S_of[k - 1 + M]) + back;
                }
            } else if (k == 0) {
                w_new[k + M] = project_stable(disc, mc, S_of[-1 + M]) + g_center;
            } else {
                w_new[k + M] = S_of[k - 1 + M];
            }
        }

        double diff = 0.0;
        {
            std::vector<SpectralField> delta(2 * M + 1, SpectralField(nm));
            for (int k = 0; k < 2 * M + 1; ++k) delta[k] = w_new[k] - w[k];
            diff = sequence_norm(disc, mc, delta);
        }
        w.swap(w_new);
        result.iterations = iter + 1;
        if (prev_diff > 0.0 && diff > 0.0)
            result.contraction_estimate = diff / prev_diff;
        prev_diff = diff;
        if (result.contraction_estimate >= 1.0 && iter > 3)
            throw std::runtime_error(
                "graph_transform_theta: iteration not contracting");
        if (diff <= 1e-15 * std::max(1.0, sequence_norm(disc, mc, w))) {
            result.converged = true;
            break;
        }
    }
    result.theta = project_stable(disc, mc, w[M]);
    return result;
}

FiberRateResult fiber_rate(const SpectralField& g, const Discretization& disc,
                           const ManifoldConfig& mc, double t_max,
                           double sample_dt, bool refine_companion) {
    auto distinct = distinct_eigenvalues(disc.modes);
    const double lambda_K = distinct[mc.K];

    SpectralField g_c = project_center(disc, mc, g);
    SpectralField companion;
    if (refine_companion) {
        // late-time linear extrapolation of the orbit's center coordinates:
        // c_j(T) e^{lambda_j T} converges to the fiber base point's
        // coordinate.  Follow-up passes correct the residual mismatch
        // against the companion's own orbit (the constant mode persists
        // forever, so even tiny offsets dominate the separation tail).
        SolverConfig cfg = mc.solver;
        cfg.t_end = t_max;
        cfg.sample_dt = t_max;
        TrajectoryRecord rec = evolve(g, disc, cfg);
        if (rec.failed)
            throw std::runtime_error("fiber_rate: orbit failed: " + rec.failure);
        const SpectralField cT = rec.back().coeffs;
        for (std::size_t i = 0; i < g_c.size(); ++i) {
            const auto& mode = disc.modes.modes[i];
            if (mode.lambda <= lambda_K + 1e-12)
                g_c[i] = cT[i] * std::exp(mode.lambda * t_max);
        }
        for (int pass = 0; pass < 2; ++pass) {
            ThetaResult th = graph_transform_theta(g_c, disc, mc);
            companion = g_c + th.theta;
            TrajectoryRecord rc = evolve(companion, disc, cfg);
            if (rc.failed)
                throw std::runtime_error("fiber_rate: companion failed");
            const SpectralField& dT = rc.back().coeffs;
            for (std::size_t i = 0; i < g_c.size(); ++i) {
                const auto& mode = disc.modes.modes[i];
                if (mode.lambda <= lambda_K + 1e-12)
                    g_c[i] += (cT[i] - dT[i]) * std::exp(mode.lambda * t_max);
            }
        }
    }
    ThetaResult theta = graph_transform_theta(g_c, disc, mc);
    companion = g_c + theta.theta;

    FiberRateResult out;
    out.companion = companion;

    // evolve both orbits, recording the separation at the sample times
    SolverConfig cfg = mc.solver;
    cfg.t_end = t_max;
    cfg.sample_dt = sample_dt;
    TrajectoryRecord ra = evolve(g, disc, cfg);
    TrajectoryRecord rb = evolve(companion, disc, cfg);
    if (ra.failed || rb.failed)
        throw std::runtime_error("fiber_rate: orbit failed");
    std::size_t n = std::min(ra.samples.size(), rb.samples.size());
    std::size_t usable = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double sep = (ra.samples[i].coeffs - rb.samples[i].coeffs).l2_norm();
        out.times.push_back(ra.samples[i].t);
        out.separations.push_back(sep);
        if (sep >= 1e-13) ++usable;
    }
    // insufficient signal: the separation hit the floor before the fit
    // window could fill
    if (usable < 4) out.floor_hit = true;

    // log-linear fit over the samples with usable signal
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int count = 0;
    for (std::size_t i = 0; i < out.times.size(); ++i) {
        if (out.separations[i] < 1e-13) continue;
        double x = out.times[i], y = std::log(out.separations[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++count;
    }
    if (count >= 2) {
        double denom = count * sxx - sx * sx;
        double slope = (count * sxy - sx * sy) / denom;
        out.fitted_rate = -slope;
        out.fitted_Lambda = std::exp(slope);
        double mean_y = sy / count;
        double ss_tot = 0, ss_res = 0;
        double intercept = (sy - slope * sx) / count;
        for (std::size_t i = 0; i < out.times.size(); ++i) {
            if (out.separations[i] < 1e-13) continue;
            double y = std::log(out.separations[i]);
            double fit = intercept + slope * out.times[i];
            ss_tot += (y - mean_y) * (y - mean_y);
            ss_res += (y - fit) * (y - fit);
        }
        out.r_squared = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
    } else {
        out.floor_hit = true;
    }
    return out;
}

}  // namespace pmlab
