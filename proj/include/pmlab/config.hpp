#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pmlab/quadrature.hpp"

namespace pmlab {

// Parsed and validated experiment configuration for the CLI.
struct ExperimentConfig {
    std::string kind = "spectrum";  // spectrum|geodesic|simulate|verify|manifold
    int N = 1;
    double sigma = 1.0;
    std::string sector = "full_1d";  // radial|full_1d|full_2d
    int max_degree = 8;
    int l_max = -1;
    int quad_order = 0;     // 0: derived
    int angular_order = 0;  // 0: derived
    double dealias_factor = 1.5;

    double dt = 1e-3;
    double t_end = 4.0;
    double sample_dt = 1e-2;
    double eps = 0.25;    // truncation
    double delta = 0.25;
    bool truncated = true;
    double denominator_floor = 0.1;
    std::string scheme = "euler";  // euler|erk2

    std::uint64_t seed = 1;
    double g_sup = 0.02;
    double g_lip = 0.02;

    std::string theorem = "T10";  // T10|T11|T17|T14|pressure

    int K = 1;
    double eps_gap = 0.01;
    double lambda_minus = 0.0;  // 0: derived
    int window_M = 6;
    int n_iter = 60;

    double mesh_h = 0.02;  // geodesic oracle spacing
    std::vector<double> z1 = {0.5, 0.0};
    std::vector<double> z2 = {0.0, 0.5};

    std::string out_dir = ".";

    Sector sector_enum() const;
};

// Parses `key = value` lines ('#' comments).  On failure, `violations`
// carries every problem found, not just the first.
struct ParseResult {
    ExperimentConfig config;
    std::vector<std::string> violations;

    bool ok() const { return violations.empty(); }
};

ParseResult parse_config(const std::string& text);
ParseResult parse_config_file(const std::string& path);

}  // namespace pmlab
