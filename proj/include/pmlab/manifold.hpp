#pragma once

#include <vector>

#include "pmlab/solver.hpp"

namespace pmlab {

// Discrete-time dynamical systems layer around the time-one map S of the
// truncated equation.  K is the center cut in the non-repeated eigenvalue
// ordering: E_c is spanned by all modes with eigenvalue <= lambda_K.
struct ManifoldConfig {
    int K = 1;
    double eps_gap = 0.0;       // derived when <= 0
    double Lambda_s = 0.0;      // e^{-lambda_{K+1}}
    double Lambda_c = 0.0;      // e^{-lambda_K}
    double Lambda_minus = 0.0;  // in (Lambda_s + eps_gap, Lambda_c - eps_gap)
    double Lambda_plus = 0.0;   // > 1 + eps_gap
    int window_M = 6;
    int n_iter = 60;
    SolverConfig solver;        // must carry a truncation
};

// Fills the Lambda constants from the spectrum.  lambda_minus <= 0 picks the
// geometric midpoint of the admissible window.
ManifoldConfig make_manifold_config(const Discretization& disc, int K,
                                    double eps_gap = 0.05,
                                    double lambda_minus = 0.0,
                                    int window_M = 6, int n_iter = 60,
                                    SolverConfig solver = {});

// Center/stable split with respect to the config's cut.
struct SplitField {
    SpectralField center;
    SpectralField stable;

    SpectralField recombine() const { return center + stable; }
};
SplitField split(const Discretization& disc, const ManifoldConfig& mc,
                 const SpectralField& f);
SpectralField project_center(const Discretization& disc,
                             const ManifoldConfig& mc, const SpectralField& f);
SpectralField project_stable(const Discretization& disc,
                             const ManifoldConfig& mc, const SpectralField& f);

// max{ |P_c w|, |P_s w| } in L^2_sigma
double split_norm(const Discretization& disc, const ManifoldConfig& mc,
                  const SpectralField& f);

// S = time-one map of the truncated flow.
SpectralField time_one_map(const SpectralField& g, const Discretization& disc,
                           const ManifoldConfig& mc);

// R = S - L with L = e^{-L} the linear time-one map.
SpectralField remainder_map(const SpectralField& g, const Discretization& disc,
                            const ManifoldConfig& mc);

// Graph-transform approximation of theta(g_c) = P_s w_0 on a finite window
// {-M..M}, with center-only closure at k = -M.
struct ThetaResult {
    SpectralField theta;
    double contraction_estimate = 0.0;
    int iterations = 0;
    bool converged = false;
};
ThetaResult graph_transform_theta(const SpectralField& g_center,
                                  const Discretization& disc,
                                  const ManifoldConfig& mc);

// Decay-rate measurement along the stable fibration: the orbit of g is
// compared against the orbit of a companion point on the numerical center
// manifold.  refine_companion replaces the companion's center coordinates by
// the orbit's late-time linear extrapolation (the asymptotically matched
// fiber base point); without it the companion is P_c g + theta(P_c g).
struct FiberRateResult {
    double fitted_rate = 0.0;    // decay exponent of the separation
    double fitted_Lambda = 1.0;  // e^{-rate}
    double r_squared = 0.0;
    bool floor_hit = false;      // separation fell below 1e-13 in the window
    SpectralField companion;
    std::vector<double> times;
    std::vector<double> separations;
};
FiberRateResult fiber_rate(const SpectralField& g, const Discretization& disc,
                           const ManifoldConfig& mc, double t_max = 4.5,
                           double sample_dt = 0.5,
                           bool refine_companion = true);

}  // namespace pmlab
