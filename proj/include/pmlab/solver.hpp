#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pmlab/modes.hpp"
#include "pmlab/quadrature.hpp"

namespace pmlab {

// Everything the Galerkin solver needs about space: mode set, dealiased
// quadrature grid and precomputed basis tables.
struct Discretization {
    ModelParams params;
    Sector sector = Sector::radial;
    ModeSet modes;
    Grid grid;
    BasisTables tables;
    double ball_sigma = 0.0;  // |B|_sigma

    std::size_t n_modes() const { return modes.size(); }
};

Discretization make_discretization(const ModelParams& params, Sector sector,
                                   int max_degree, int l_max = -1,
                                   double dealias_factor = 1.5,
                                   int quad_order = 0, int angular_order = 0);

// Smooth cutoff for the truncated nonlinearity.
struct TruncationConfig {
    double eps = 0.25;
    double delta = 0.25;

    TruncationConfig() = default;
    TruncationConfig(double e, double d);
};

struct SolverConfig {
    double dt = 1e-3;
    double t_end = 1.0;
    double sample_dt = 1e-2;
    std::optional<TruncationConfig> truncation;
    double denominator_floor = 0.1;
    bool nonlinearity = true;  // off: pure heat semigroup stepping
    bool erk2 = false;         // second-order exponential Runge-Kutta
};

// C-infinity bridge: 1 on s <= 1, 0 on s >= 2.
double smooth_bridge(double s);

// eta_{eps,delta}(q,p) = bridge(q^2/delta^2) * bridge(|p|^2/eps^2)
double cutoff_eta(double q, double p_norm2, const TruncationConfig& trunc);

// F(q,p) = |p|^2 / (1 + q + z.p).  Throws when the denominator falls to the
// floor (the solution left the validity neighborhood).  The _channels form
// takes the precomputed z.p and |p|^2.
double nonlinearity_F_channels(double q, double p_dot_z, double p_norm2,
                               double denominator_floor = 0.1);
double nonlinearity_F(double q, const std::vector<double>& p,
                      const std::vector<double>& z,
                      double denominator_floor = 0.1);

// Truncated variant; globally defined.
double nonlinearity_F_truncated_channels(double q, double p_dot_z,
                                         double p_norm2,
                                         const TruncationConfig& trunc);
double nonlinearity_F_truncated(double q, const std::vector<double>& p,
                                const std::vector<double>& z,
                                const TruncationConfig& trunc);

// Galerkin coefficients of the weak right-hand side
//   <f(w), phi_i> = beta int phi_i F dmu_{sigma+1} + int (z.grad phi_i) F dmu_{sigma+1}
struct RhsResult {
    SpectralField coeffs;
    double F_integral_sigma1 = 0.0;  // int F dmu_{sigma+1}
    double min_denominator = 1.0;
    double sup_w = 0.0, inf_w = 0.0, lip_w = 0.0;  // grid diagnostics
};
RhsResult rhs_weak(const SpectralField& w, const Discretization& disc,
                   const SolverConfig& config);

// One exponential-Euler (or Lawson-RK2) step.
SpectralField step(const SpectralField& state, const Discretization& disc,
                   const SolverConfig& config);

struct TrajectorySample {
    double t = 0.0;
    SpectralField coeffs;
    double sup = 0.0, inf = 0.0, lip = 0.0;
    double l2 = 0.0, h1 = 0.0;
    double energy_residual = 0.0;
    double mean_sigma = 0.0;        // int w dmu_sigma
    double F_integral_sigma1 = 0.0; // int F dmu_{sigma+1} at the sample
};

struct TrajectoryRecord {
    std::vector<TrajectorySample> samples;
    bool failed = false;
    std::string failure;

    const TrajectorySample& back() const { return samples.back(); }
};

// Integrates from g to t_end, sampling every sample_dt.
TrajectoryRecord evolve(const SpectralField& g, const Discretization& disc,
                        const SolverConfig& config);

// Weak comparison principle: inf g <= w(t) <= sup g.
struct ComparisonReport {
    double max_upper_violation = 0.0;
    double max_lower_violation = 0.0;
    double max_violation() const {
        return std::max(max_upper_violation, max_lower_violation);
    }
};
ComparisonReport check_comparison(const TrajectoryRecord& record);

// Absolute residual of the energy identity at the end of the run.
double energy_identity_residual(const TrajectoryRecord& record);

// Seeded random field with coefficient decay 1/(1+lambda^2), scaled so that
// sup <= target_sup and lip <= target_lip with equality in the binding one.
SpectralField random_field(const Discretization& disc, std::uint64_t seed,
                           double target_sup, double target_lip,
                           const std::function<bool(const EigenIndex&)>& keep =
                               [](const EigenIndex&) { return true; });

}  // namespace pmlab
