#pragma once

#include <string>
#include <vector>

#include "pmlab/config.hpp"

namespace pmlab {

// Executes one experiment: dispatches on config.kind, writes CSV outputs
// under config.out_dir and returns a process exit code (0 on success, 1 on
// a failed verification, 2 on errors) plus human-readable summary lines.
struct RunReport {
    int exit_code = 0;
    std::vector<std::string> summary;
};

RunReport run(const ExperimentConfig& config);

}  // namespace pmlab
