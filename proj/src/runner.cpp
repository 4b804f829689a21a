#include "pmlab/runner.hpp"

#include <cmath>
#include <filesystem>
#include <sstream>

#include "pmlab/asymptotics.hpp"
#include "pmlab/csv.hpp"
#include "pmlab/geometry.hpp"
#include "pmlab/manifold.hpp"
#include "pmlab/modes.hpp"
#include "pmlab/solver.hpp"

namespace pmlab {

namespace {

std::string out_path(const ExperimentConfig& c, const std::string& name) {
    std::filesystem::create_directories(c.out_dir);
    return (std::filesystem::path(c.out_dir) / name).string();
}

SolverConfig solver_config(const ExperimentConfig& c) {
    SolverConfig s;
    s.dt = c.dt;
    s.t_end = c.t_end;
    s.sample_dt = c.sample_dt;
    if (c.truncated) s.truncation = TruncationConfig(c.eps, c.delta);
    s.denominator_floor = c.denominator_floor;
    s.erk2 = (c.scheme == "erk2");
    return s;
}

void write_trajectory(const ExperimentConfig& c, const Discretization& disc,
                      const TrajectoryRecord& rec, const std::string& name) {
    CsvWriter csv(out_path(c, name));
    std::vector<std::string> cols = {"t"};
    for (std::size_t i = 0; i < disc.n_modes(); ++i)
        cols.push_back("c_" + std::to_string(i));
    for (const char* extra :
         {"sup", "inf", "lip", "l2", "h1", "energy_residual"})
        cols.push_back(extra);
    csv.header(cols);
    for (const auto& s : rec.samples) {
        std::vector<double> vals = {s.t};
        vals.insert(vals.end(), s.coeffs.coeffs.begin(), s.coeffs.coeffs.end());
        for (double v : {s.sup, s.inf, s.lip, s.l2, s.h1, s.energy_residual})
            vals.push_back(v);
        csv.row(vals);
    }
}

int run_spectrum(const ExperimentConfig& c, RunReport& rep) {
    ModelParams p(c.N, c.sigma);
    CsvWriter csv(out_path(c, "spectrum.csv"));
    csv.header({"l", "n", "k", "multiplicity", "lambda"});
    int rows = 0;
    int lmax = (c.N == 1) ? std::min(1, c.max_degree)
                          : (c.l_max >= 0 ? c.l_max : c.max_degree);
    for (int l = 0; l <= lmax; ++l) {
        int mult = multiplicity(p, l);
        if (mult == 0) continue;
        for (int k = 0; l + 2 * k <= c.max_degree; ++k) {
            for (int n = 1; n <= mult; ++n) {
                csv.row({static_cast<double>(l), static_cast<double>(n),
                         static_cast<double>(k), static_cast<double>(mult),
                         eigenvalue(p, l, k)});
                ++rows;
            }
        }
    }
    rep.summary.push_back("spectrum: wrote " + std::to_string(rows) +
                          " modes to spectrum.csv");
    return 0;
}

int run_geodesic(const ExperimentConfig& c, RunReport& rep) {
    GeoPoint z1(c.z1), z2(c.z2);
    double d = semimetric(z1, z2);
    GeodesicOracle oracle(c.mesh_h);
    double dn = oracle.distance(z1, z2);
    auto exact = geodesic_distance_exact(z1, z2);
    CsvWriter csv(out_path(c, "geodesic.csv"));
    csv.header({"d_semimetric", "d_numeric", "d_exact"});
    std::vector<std::string> row = {format_double(d), format_double(dn),
                                    exact ? format_double(*exact) : ""};
    csv.row_strings(row);
    std::ostringstream msg;
    msg << "geodesic: d = " << d << ", numeric = " << dn;
    if (exact) msg << ", exact = " << *exact;
    rep.summary.push_back(msg.str());
    return 0;
}

int run_simulate(const ExperimentConfig& c, RunReport& rep) {
    ModelParams p(c.N, c.sigma);
    Discretization disc =
        make_discretization(p, c.sector_enum(), c.max_degree, c.l_max,
                            c.dealias_factor, c.quad_order, c.angular_order);
    SpectralField g = random_field(disc, c.seed, c.g_sup, c.g_lip);
    TrajectoryRecord rec = evolve(g, disc, solver_config(c));
    write_trajectory(c, disc, rec, "trajectory.csv");
    if (rec.failed) {
        rep.summary.push_back("simulate: FAILED: " + rec.failure);
        return 2;
    }
    rep.summary.push_back("simulate: wrote trajectory.csv (" +
                          std::to_string(rec.samples.size()) + " samples)");
    return 0;
}

int run_verify(const ExperimentConfig& c, RunReport& rep) {
    ModelParams p(c.N, c.sigma);
    Discretization disc =
        make_discretization(p, c.sector_enum(), c.max_degree, c.l_max,
                            c.dealias_factor, c.quad_order, c.angular_order);
    SolverConfig scfg = solver_config(c);

    VerifyReport vr;
    if (c.theorem == "T10") {
        SpectralField g = random_field(disc, c.seed, c.g_sup, c.g_lip);
        vr = verify_stability(g, disc, scfg);
    } else if (c.theorem == "T11") {
        SpectralField g = random_field(disc, c.seed, c.g_sup, c.g_lip);
        vr = verify_translation_correction(g, disc, scfg);
    } else if (c.theorem == "T17") {
        SpectralField g =
            random_field(disc, c.seed, c.g_sup, c.g_lip,
                         [](const EigenIndex& i) { return i.l % 2 == 0; });
        vr = verify_affine_correction(g, disc, scfg);
    } else if (c.theorem == "T14") {
        SpectralField g = random_field(disc, c.seed, c.g_sup, c.g_lip);
        vr = verify_dilation_correction(g, disc, scfg);
    } else {
        std::function<bool(const EigenIndex&)> keep =
            (c.sector_enum() == Sector::full_2d)
                ? std::function<bool(const EigenIndex&)>(
                      [](const EigenIndex& i) { return i.l % 2 == 0; })
                : std::function<bool(const EigenIndex&)>(
                      [](const EigenIndex&) { return true; });
        SpectralField g = random_field(disc, c.seed, c.g_sup, c.g_lip, keep);
        vr = verify_pressure_theorems(g, disc, scfg);
    }

    CsvWriter csv(out_path(c, "verify_" + c.theorem + ".csv"));
    csv.header({"quantity", "expected", "measured", "tolerance", "pass"});
    for (const auto& r : vr.rows)
        csv.row_strings({r.quantity, format_double(r.expected),
                         format_double(r.measured), format_double(r.tolerance),
                         r.pass ? "pass" : "fail"});
    for (const auto& r : vr.rows) {
        std::ostringstream msg;
        msg << (r.pass ? "[PASS] " : "[FAIL] ") << vr.name << ": "
            << r.quantity << " expected " << r.expected << " measured "
            << r.measured;
        rep.summary.push_back(msg.str());
    }
    return vr.pass() ? 0 : 1;
}

int run_manifold(const ExperimentConfig& c, RunReport& rep) {
    ModelParams p(c.N, c.sigma);
    Discretization disc =
        make_discretization(p, c.sector_enum(), c.max_degree, c.l_max,
                            c.dealias_factor, c.quad_order, c.angular_order);
    SolverConfig scfg = solver_config(c);
    if (!scfg.truncation) scfg.truncation = TruncationConfig(0.25, 0.25);
    ManifoldConfig mc = make_manifold_config(disc, c.K, c.eps_gap,
                                             c.lambda_minus, c.window_M,
                                             c.n_iter, scfg);

    CsvWriter csv(out_path(c, "manifold_theta.csv"));
    csv.header({"norm_gc", "norm_theta", "contraction", "iterations"});
    // tangency table over a range of center amplitudes
    SpectralField dir = random_field(disc, c.seed, 1.0, 1e9);
    SpectralField dir_c = project_center(disc, mc, dir);
    double dn = dir_c.l2_norm();
    if (dn > 0) dir_c *= 1.0 / dn;
    for (double s : {1e-3, 3e-3, 1e-2, 3e-2, 1e-1}) {
        SpectralField g_c = s * dir_c;
        ThetaResult th = graph_transform_theta(g_c, disc, mc);
        csv.row({g_c.l2_norm(), th.theta.l2_norm(), th.contraction_estimate,
                 static_cast<double>(th.iterations)});
    }
    rep.summary.push_back("manifold: wrote manifold_theta.csv");

    SpectralField g = random_field(disc, c.seed + 1, c.g_sup, c.g_lip);
    FiberRateResult fr = fiber_rate(g, disc, mc);
    CsvWriter fcsv(out_path(c, "manifold_fiber.csv"));
    fcsv.header({"t", "separation"});
    for (std::size_t i = 0; i < fr.times.size(); ++i)
        fcsv.row({fr.times[i], fr.separations[i]});
    std::ostringstream msg;
    msg << "manifold: fiber rate " << fr.fitted_rate << " (Lambda "
        << fr.fitted_Lambda << ", target <= " << mc.Lambda_minus << ")";
    rep.summary.push_back(msg.str());
    return 0;
}

}  // namespace

RunReport run(const ExperimentConfig& config) {
    RunReport rep;
    try {
        if (config.kind == "spectrum")
            rep.exit_code = run_spectrum(config, rep);
        else if (config.kind == "geodesic")
            rep.exit_code = run_geodesic(config, rep);
        else if (config.kind == "simulate")
            rep.exit_code = run_simulate(config, rep);
        else if (config.kind == "verify")
            rep.exit_code = run_verify(config, rep);
        else if (config.kind == "manifold")
            rep.exit_code = run_manifold(config, rep);
        else {
            rep.summary.push_back("unknown kind: " + config.kind);
            rep.exit_code = 2;
        }
    } catch (const std::exception& e) {
        rep.summary.push_back(std::string("error: ") + e.what());
        rep.exit_code = 2;
    }
    return rep;
}

}  // namespace pmlab
