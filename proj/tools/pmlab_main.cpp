// Batch experiment runner: spectrum tables, geodesic queries, perturbation
// trajectories, theorem verification reports, center-manifold diagnostics.

#include <CLI11.hpp>

#include <iostream>

#include "pmlab/config.hpp"
#include "pmlab/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"pmlab: spectral laboratory for confined porous medium flow"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    std::uint64_t seed = 0;
    bool seed_set = false;
    double dt = 0.0, t_end = 0.0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "config file (key = value)");
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--seed", seed, "random seed")
            ->each([&](const std::string&) { seed_set = true; });
        sub->add_option("--dt", dt, "time step override");
        sub->add_option("--t-end", t_end, "final time override");
    };

    for (const char* name :
         {"spectrum", "geodesic", "simulate", "verify", "manifold"})
        add_common(app.add_subcommand(name));

    CLI11_PARSE(app, argc, argv);

    pmlab::ParseResult parsed;
    if (!config_path.empty()) {
        parsed = pmlab::parse_config_file(config_path);
    }
    parsed.config.kind = app.get_subcommands()[0]->get_name();

    // flag overrides
    if (!out_dir.empty()) parsed.config.out_dir = out_dir;
    if (seed_set) parsed.config.seed = seed;
    if (dt > 0.0) parsed.config.dt = dt;
    if (t_end > 0.0) parsed.config.t_end = t_end;

    if (!parsed.ok()) {
        std::cerr << "configuration rejected:\n";
        for (const auto& v : parsed.violations) std::cerr << "  - " << v << "\n";
        return 2;
    }

    pmlab::RunReport rep = pmlab::run(parsed.config);
    for (const auto& line : rep.summary) std::cout << line << "\n";
    return rep.exit_code;
}
