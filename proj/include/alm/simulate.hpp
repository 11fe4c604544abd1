#pragma once

#include "alm/duality.hpp"
#include "alm/model.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace alm {

enum class Scheme { LogEuler, Euler };

struct SimulationSpec {
    std::int64_t n_paths = 100000;
    int n_steps = 256;
    std::uint64_t seed = 20240801;
    Scheme scheme = Scheme::LogEuler;
    bool antithetic = true;
    bool common_random_numbers = true;
    int n_threads = 0;  // 0: hardware concurrency
};

enum class ConsumptionKind { Zero, DualOptimal, LogOptimal };

struct ConsumptionRule {
    ConsumptionKind kind = ConsumptionKind::Zero;
    double scale = 1.0;  // multiplicative perturbation of the rule
};

struct StrategySpec {
    double pi = 0.0;
    double kappa = 0.0;
    ConsumptionRule consumption;
};

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::int64_t n = 0;
};

// Per-path terminal data and accumulators. The consumption-utility integral
// holds 0 for the Zero rule (the objective then has no consumption term).
struct PathEnsemble {
    std::vector<double> terminal_wealth;       // V_T
    std::vector<double> consumption_utility;   // integral of U1(gamma_t) dt
    std::vector<double> deflator_terminal;     // H_T
    std::vector<double> deflator_mid;          // H at mid_time
    std::vector<double> budget_accumulator;    // H_T V_T + integral of H gamma dt
    std::vector<int> jump_counts;

    double horizon = 0.0;
    double mid_time = 0.0;  // grid time closest to T/2 where deflator_mid is recorded
};

// Streams one path's grid rows out while simulating (per-path CSV dump).
class TraceSink {
public:
    virtual ~TraceSink() = default;
    virtual void row(std::int64_t path, double t, double wealth, double deflator,
                     double cumulative_consumption, double consumption_rate) = 0;
};

// Co-simulates the controlled wealth SDE and the deflator SDE on a shared
// randomness source per path (common random numbers by construction). The
// deflator is driven by `controls`; `dual_consumption_level` is x / X(1),
// consumed only by the DualOptimal rule. Claim times are exact exponential
// arrivals, marks follow the truncated claim law, and the diffusion advances
// to each jump time.
PathEnsemble simulate_wealth(const ModelConfig& config, const StrategySpec& strategy,
                             const DualControls& controls, double dual_consumption_level,
                             const SimulationSpec& spec, TraceSink* trace = nullptr);

// Deflator marginals only (wealth runs with the trivial strategy).
PathEnsemble simulate_deflator(const ModelConfig& config, const DualControls& controls,
                               const SimulationSpec& spec);

// Sample mean / standard error of the realized utility functional
//   J = integral of U1(gamma_t) dt + U2(V_T).
// Throws UtilityOverflow when eta > 1 and some terminal wealth underflowed.
McEstimate estimate_objective(const ModelConfig& config, const PathEnsemble& ensemble);

// Compensated-summation mean and standard error (canonical sequential order).
McEstimate reduce_mean(std::span<const double> values);

// CRRA utility value of a consumption/wealth level.
double crra_utility(double eta, double value);

} // namespace alm
