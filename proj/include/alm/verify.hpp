#pragma once

#include "alm/duality.hpp"
#include "alm/simulate.hpp"

#include <string>
#include <vector>

namespace alm {

struct PerturbationGrid {
    std::vector<double> pi_offsets{-0.25, -0.10, 0.10, 0.25};       // relative
    std::vector<double> kappa_offsets{-0.25, -0.10, 0.10, 0.25};    // relative
    std::vector<double> consumption_scales{0.75, 1.25};             // multiplicative
};

// Residuals of the optimality conditions at a solved strategy:
//   portfolio:        pi sigma - rho b kappa - theta / eta
//   diffusion_control: phi1 + eta b kappa sqrt(1 - rho^2)
//   jump_control_max: max over y-grid of |(1 - kappa y) - phi2(y)^(-1/eta)|
//   feasibility:      dual feasibility value at (phi1, phi2)
struct ConditionResiduals {
    double portfolio = 0.0;
    double diffusion_control = 0.0;
    double jump_control_max = 0.0;
    double feasibility = 0.0;

    double max_abs() const;
};

struct DominanceEntry {
    std::string label;        // "pi-10%", "kappa+25%", "consumption x0.75", "optimal"
    double pi = 0.0;
    double kappa = 0.0;
    double consumption_scale = 1.0;
    bool skipped = false;     // perturbation left the admissible region
    McEstimate objective;     // J estimate
    McEstimate objective_gap; // paired J(optimal) - J(perturbed)
    McEstimate budget_gap;    // E[H_T V_T + int H gamma dt] - x
    bool dominance_pass = false;
    bool budget_pass = false;
};

struct VerificationReport {
    ConditionResiduals residuals;
    double condition_tol = 1e-9;
    bool conditions_pass = false;
    McEstimate optimal_objective;
    McEstimate optimal_budget_gap;
    bool optimal_budget_pass = false;
    std::vector<DominanceEntry> entries;

    bool all_pass() const;
};

ConditionResiduals check_conditions(const ModelConfig& config, const OptimalStrategy& strategy);

// E[H_T V_T + integral of H gamma dt] - x for an arbitrary wealth strategy,
// deflator driven by the solved dual controls (shared randomness).
McEstimate budget_identity(const ModelConfig& config, const OptimalStrategy& solved,
                           const StrategySpec& strategy, const SimulationSpec& spec);

// Paired-difference dominance of the solved optimum over the perturbation
// grid under common random numbers, plus per-entry budget residuals and the
// optimality-condition residuals.
VerificationReport objective_dominance(const ModelConfig& config, const OptimalStrategy& solved,
                                       const PerturbationGrid& grid, const SimulationSpec& spec);

// Consumption rule matching the preferences (log utility uses the
// wealth-proportional rule).
ConsumptionRule optimal_consumption_rule(const ModelConfig& config);

StrategySpec optimal_strategy_spec(const ModelConfig& config, const OptimalStrategy& solved);

} // namespace alm
