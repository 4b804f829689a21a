#pragma once

#include <functional>
#include <vector>

#include "pmlab/modes.hpp"
#include "pmlab/params.hpp"
#include "pmlab/quadrature.hpp"

namespace pmlab {

// Barenblatt pressure of support radius sqrt(R): v(x) = (R - |x|^2)_+ / 2.
double barenblatt_pressure(double R, const std::vector<double>& x);

// Physical-side pressure profile.  Profiles are carried as point evaluators
// (exact for analytic inputs and for profiles produced by inverse_map) plus
// the support bounds; a uniform sample grid is generated on demand for
// sup-norm comparisons.
struct PressureProfile {
    ModelParams params;
    Sector sector = Sector::radial;
    std::function<double(const std::vector<double>&)> eval;
    double support_inner = 1.0;  // min |x| over the support boundary
    double support_outer = 1.0;  // max |x| over the support boundary

    double operator()(const std::vector<double>& x) const { return eval(x); }
};

// Perturbation-side profile: w on the closed unit ball.
struct PerturbationProfile {
    ModelParams params;
    Sector sector = Sector::radial;
    std::function<double(const std::vector<double>&)> eval;
    double sup_norm = 0.0;       // sampled estimate of |w|_inf
    double lip_seminorm = 0.0;   // sampled estimate of |grad w|_inf

    double operator()(const std::vector<double>& z) const { return eval(z); }
};

PressureProfile make_barenblatt_profile(const ModelParams& params,
                                        Sector sector, double R);

// Radial (or 1D) profile from a callable v(x) with support in
// [-outer, outer]; the callable must vanish outside its support.
PressureProfile make_pressure_profile(
    const ModelParams& params, Sector sector,
    std::function<double(const std::vector<double>&)> eval,
    double support_inner, double support_outer);

// Jacobian determinant of Phi_0(x) = x / sqrt(2 v + |x|^2):
// (2v + |x|^2)^{-N/2-1} (2v - x.grad v)
double jacobian_forward(double v_value, const std::vector<double>& grad_v,
                        const std::vector<double>& x, const ModelParams& params);

// w(z) = sqrt(2 v(x) + |x|^2) - 1 at z = Phi_0(x), by monotone root-finding
// along rays.  Throws if the sampled Jacobian condition 2v - x.grad v > 0
// fails (non-invertible input).
PerturbationProfile forward_map(const PressureProfile& v);

// v(x) = rho(z)(1+w)^2 at x = (1+w(z)) z, again by ray-wise root-finding on
// the monotone map z -> (1+w(z)) z.  Throws on nonpositive Jacobian
// 1 + w + z.grad w (fold error).
PressureProfile inverse_map(const PerturbationProfile& w);

// Same, for a spectral field in a solver mode set (exact evaluation).
PerturbationProfile perturbation_from_field(const ModeSet& ms,
                                            const SpectralField& f);

// Moments of v^{sigma+1}: mass, first moment, and x.Mx moment for a
// trace-free symmetric M.  Computed by composite quadrature over the support
// (radial and 1D sectors).
double pressure_mass(const PressureProfile& v, int cells = 2048);
std::vector<double> pressure_first_moment(const PressureProfile& v,
                                          int cells = 2048);
double pressure_second_moment(const PressureProfile& v,
                              const std::vector<double>& M, int cells = 2048);

// Pullback moments of v = (inverse transform of w): spectrally accurate
// integrals over the ball, used along trajectories.
//   mass          = int (1+w)^{beta}   (1+w+z.grad w)          dmu_{sigma+1}
//   first moment  = int (1+w)^{beta+1} (1+w+z.grad w) z_i      dmu_{sigma+1}
//   second moment = int (1+w)^{beta+2} (1+w+z.grad w) (z.Mz)   dmu_{sigma+1}
struct PullbackMoments {
    double mass = 0.0;
    std::vector<double> first;   // length N
    double second_tracefree = 0.0;  // against M (2D), 0 otherwise
};
PullbackMoments pullback_moments(const Grid& grid,
                                 const std::vector<double>& w_val,
                                 const std::vector<double>& w_dr,
                                 const std::vector<double>& w_dt,
                                 const std::vector<double>& M = {});

// Support bounds (min and max of |x| over the support boundary).
std::pair<double, double> support_bounds(const PressureProfile& v);

}  // namespace pmlab
