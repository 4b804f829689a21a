#include "pmlab/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace pmlab {

Sector ExperimentConfig::sector_enum() const {
    if (sector == "radial") return Sector::radial;
    if (sector == "full_1d") return Sector::full_1d;
    if (sector == "full_2d") return Sector::full_2d;
    throw std::invalid_argument("unknown sector: " + sector);
}

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    auto e = s.find_last_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& v, double& out) {
    try {
        std::size_t pos = 0;
        out = std::stod(v, &pos);
        return pos == v.size();
    } catch (...) {
        return false;
    }
}

bool parse_int(const std::string& v, int& out) {
    try {
        std::size_t pos = 0;
        out = std::stoi(v, &pos);
        return pos == v.size();
    } catch (...) {
        return false;
    }
}

bool parse_u64(const std::string& v, std::uint64_t& out) {
    try {
        std::size_t pos = 0;
        out = std::stoull(v, &pos);
        return pos == v.size();
    } catch (...) {
        return false;
    }
}

bool parse_point(const std::string& v, std::vector<double>& out) {
    std::vector<double> vals;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        double d;
        if (!parse_double(trim(item), d)) return false;
        vals.push_back(d);
    }
    if (vals.empty() || vals.size() > 3) return false;
    out = vals;
    return true;
}

}  // namespace

ParseResult parse_config(const std::string& text) {
    ParseResult res;
    ExperimentConfig& c = res.config;
    auto& bad = res.violations;

    static const std::set<std::string> known = {
        "kind", "N", "sigma", "sector", "max_degree", "l_max", "quad_order",
        "angular_order", "dealias_factor", "dt", "t_end", "sample_dt", "eps",
        "delta", "truncated", "denominator_floor", "scheme", "seed", "g_sup",
        "g_lip", "theorem", "K", "eps_gap", "lambda_minus", "window_M",
        "n_iter", "mesh_h", "z1", "z2", "out"};

    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            bad.push_back("line " + std::to_string(lineno) +
                          ": expected `key = value`");
            continue;
        }
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (!known.count(key)) {
            bad.push_back("line " + std::to_string(lineno) +
                          ": unknown key `" + key + "`");
            continue;
        }
        bool ok = true;
        if (key == "kind") c.kind = val;
        else if (key == "N") ok = parse_int(val, c.N);
        else if (key == "sigma") ok = parse_double(val, c.sigma);
        else if (key == "sector") c.sector = val;
        else if (key == "max_degree") ok = parse_int(val, c.max_degree);
        else if (key == "l_max") ok = parse_int(val, c.l_max);
        else if (key == "quad_order") ok = parse_int(val, c.quad_order);
        else if (key == "angular_order") ok = parse_int(val, c.angular_order);
        else if (key == "dealias_factor") ok = parse_double(val, c.dealias_factor);
        else if (key == "dt") ok = parse_double(val, c.dt);
        else if (key == "t_end") ok = parse_double(val, c.t_end);
        else if (key == "sample_dt") ok = parse_double(val, c.sample_dt);
        else if (key == "eps") ok = parse_double(val, c.eps);
        else if (key == "delta") ok = parse_double(val, c.delta);
        else if (key == "truncated") c.truncated = (val == "true" || val == "1");
        else if (key == "denominator_floor") ok = parse_double(val, c.denominator_floor);
        else if (key == "scheme") c.scheme = val;
        else if (key == "seed") ok = parse_u64(val, c.seed);
        else if (key == "g_sup") ok = parse_double(val, c.g_sup);
        else if (key == "g_lip") ok = parse_double(val, c.g_lip);
        else if (key == "theorem") c.theorem = val;
        else if (key == "K") ok = parse_int(val, c.K);
        else if (key == "eps_gap") ok = parse_double(val, c.eps_gap);
        else if (key == "lambda_minus") ok = parse_double(val, c.lambda_minus);
        else if (key == "window_M") ok = parse_int(val, c.window_M);
        else if (key == "n_iter") ok = parse_int(val, c.n_iter);
        else if (key == "mesh_h") ok = parse_double(val, c.mesh_h);
        else if (key == "z1") ok = parse_point(val, c.z1);
        else if (key == "z2") ok = parse_point(val, c.z2);
        else if (key == "out") c.out_dir = val;
        if (!ok)
            bad.push_back("line " + std::to_string(lineno) +
                          ": cannot parse value for `" + key + "`");
    }

    // invariants, all checked so the user sees every violation at once
    static const std::set<std::string> kinds = {"spectrum", "geodesic",
                                                "simulate", "verify",
                                                "manifold"};
    if (!kinds.count(c.kind)) bad.push_back("kind: unknown kind `" + c.kind + "`");
    if (c.N < 1) bad.push_back("N: dimension must be >= 1");
    if (!(c.sigma > -1.0))
        bad.push_back("sigma: the invariant sigma > -1 is violated");
    if (c.sector != "radial" && c.sector != "full_1d" && c.sector != "full_2d")
        bad.push_back("sector: must be radial|full_1d|full_2d");
    const bool sector_used = c.kind == "simulate" || c.kind == "verify" ||
                             c.kind == "manifold";
    if (sector_used && c.sector == "full_1d" && c.N != 1)
        bad.push_back("sector: full_1d requires N = 1");
    if (sector_used && c.sector == "full_2d" && c.N != 2)
        bad.push_back("sector: full_2d requires N = 2");
    if (c.max_degree < 0) bad.push_back("max_degree: must be >= 0");
    if (!(c.dt > 0.0)) bad.push_back("dt: must be > 0");
    if (!(c.t_end >= 0.0)) bad.push_back("t_end: must be >= 0");
    if (!(c.sample_dt >= c.dt)) bad.push_back("sample_dt: must be >= dt");
    if (c.dealias_factor < 1.5)
        bad.push_back("dealias_factor: must be >= 1.5");
    if (c.truncated) {
        if (!(c.eps > 0.0 && c.delta > 0.0))
            bad.push_back("eps/delta: truncation requires eps, delta > 0");
        double s = std::sqrt(2.0) * (c.eps + c.delta);
        if (!(s < 1.0)) {
            std::ostringstream msg;
            msg << "eps/delta: sqrt(2)(eps+delta) = " << s
                << " violates sqrt(2)(eps+delta) < 1";
            bad.push_back(msg.str());
        }
    }
    if (c.scheme != "euler" && c.scheme != "erk2")
        bad.push_back("scheme: must be euler|erk2");
    static const std::set<std::string> theorems = {"T10", "T11", "T17", "T14",
                                                   "pressure"};
    if (!theorems.count(c.theorem))
        bad.push_back("theorem: must be T10|T11|T17|T14|pressure");
    if (c.K < 0) bad.push_back("K: must be >= 0");
    if (c.window_M < 1) bad.push_back("window_M: must be >= 1");
    if (c.n_iter < 1) bad.push_back("n_iter: must be >= 1");
    if (!(c.mesh_h > 1e-4 && c.mesh_h < 0.3))
        bad.push_back("mesh_h: must lie in (1e-4, 0.3)");
    for (const auto* pt : {&c.z1, &c.z2}) {
        double r2 = 0.0;
        for (double v : *pt) r2 += v * v;
        if (r2 > 1.0 + 1e-12)
            bad.push_back("z1/z2: points must lie in the closed unit ball");
    }
    return res;
}

ParseResult parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        ParseResult res;
        res.violations.push_back("cannot open config file: " + path);
        return res;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

}  // namespace pmlab
