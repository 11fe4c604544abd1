#pragma once

#include "alm/duality.hpp"
#include "alm/model.hpp"
#include "alm/simulate.hpp"

#include <string>
#include <utility>
#include <vector>

namespace alm {

struct OutputOptions {
    std::string dir = ".";
    std::string stem = "run";
};

struct RunConfig {
    ModelConfig model;                              // validated
    SolverOptions solver;
    SimulationSpec sim;
    std::vector<std::pair<double, double>> sweep;   // (rho, eta) pairs
    OutputOptions output;
};

// Loads a TOML config (sections [market], [liability], [claims],
// [preferences], [solver], [sim], [sweep], [output]; keys named after the
// parameter fields). Throws ConfigError on parse/schema problems and
// InvalidParams on value violations.
RunConfig load_config(const std::string& path);

// Same, from an in-memory document (tests).
RunConfig parse_config(const std::string& text);

Truncation truncation_from_name(const std::string& name);

} // namespace alm
