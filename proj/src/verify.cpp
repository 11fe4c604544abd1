#include "alm/verify.hpp"

#include "alm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace alm {

double ConditionResiduals::max_abs() const {
    return std::max({std::fabs(portfolio), std::fabs(diffusion_control),
                     std::fabs(jump_control_max), std::fabs(feasibility)});
}

bool VerificationReport::all_pass() const {
    if (!conditions_pass || !optimal_budget_pass) return false;
    for (const auto& e : entries) {
        if (e.skipped) continue;
        if (!e.dominance_pass || !e.budget_pass) return false;
    }
    return true;
}

ConditionResiduals check_conditions(const ModelConfig& config, const OptimalStrategy& strategy) {
    const auto& l = config.liability;
    const double eta = config.preferences.eta;
    const double kappa = strategy.kappa;

    ConditionResiduals res;
    res.portfolio = strategy.pi * config.market.sigma - l.rho * l.b * kappa - config.theta / eta;
    res.diffusion_control =
        strategy.controls.phi1 + eta * l.b * kappa * std::sqrt(1.0 - l.rho * l.rho);

    double worst = 0.0;
    const int grid_points = 101;
    for (int i = 0; i < grid_points; ++i) {
        const double y = config.claims.limit * static_cast<double>(i) / (grid_points - 1);
        const double diff =
            (1.0 - kappa * y) - std::pow(strategy.controls.jump_control(y), -1.0 / eta);
        worst = std::max(worst, std::fabs(diff));
    }
    res.jump_control_max = worst;
    res.feasibility = dual_feasibility(config, strategy.controls);
    return res;
}

McEstimate budget_identity(const ModelConfig& config, const OptimalStrategy& solved,
                           const StrategySpec& strategy, const SimulationSpec& spec) {
    const PathEnsemble ens = simulate_wealth(config, strategy, solved.controls,
                                             config.preferences.initial_wealth / solved.x_one,
                                             spec);
    McEstimate est = reduce_mean(ens.budget_accumulator);
    est.mean -= config.preferences.initial_wealth;
    return est;
}

ConsumptionRule optimal_consumption_rule(const ModelConfig& config) {
    ConsumptionRule rule;
    rule.kind = config.preferences.eta == 1.0 ? ConsumptionKind::LogOptimal
                                              : ConsumptionKind::DualOptimal;
    return rule;
}

StrategySpec optimal_strategy_spec(const ModelConfig& config, const OptimalStrategy& solved) {
    StrategySpec s;
    s.pi = solved.pi;
    s.kappa = solved.kappa;
    s.consumption = optimal_consumption_rule(config);
    return s;
}

namespace {

std::string fmt_label(const char* prefix, double value, const char* suffix) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%s%+g%s", prefix, value, suffix);
    return buf;
}

std::string fmt_scale_label(double scale) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "consumption x%g", scale);
    return buf;
}

McEstimate paired_difference(std::span<const double> opt_j, std::span<const double> pert_j) {
    std::vector<double> diff(opt_j.size());
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = opt_j[i] - pert_j[i];
    return reduce_mean(diff);
}

std::vector<double> per_path_objective(const ModelConfig& config, const PathEnsemble& ens) {
    std::vector<double> j(ens.terminal_wealth.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        j[i] = ens.consumption_utility[i] +
               crra_utility(config.preferences.eta, ens.terminal_wealth[i]);
    }
    return j;
}

} // namespace

VerificationReport objective_dominance(const ModelConfig& config, const OptimalStrategy& solved,
                                       const PerturbationGrid& grid, const SimulationSpec& spec) {
    VerificationReport report;
    report.residuals = check_conditions(config, solved);
    report.conditions_pass = report.residuals.max_abs() <= report.condition_tol;

    const double x = config.preferences.initial_wealth;
    const double dual_level = x / solved.x_one;
    const StrategySpec opt_spec = optimal_strategy_spec(config, solved);

    const PathEnsemble opt_ens = simulate_wealth(config, opt_spec, solved.controls, dual_level, spec);
    const std::vector<double> opt_j = per_path_objective(config, opt_ens);
    report.optimal_objective = reduce_mean(opt_j);
    report.optimal_budget_gap = reduce_mean(opt_ens.budget_accumulator);
    report.optimal_budget_gap.mean -= x;
    report.optimal_budget_pass =
        std::fabs(report.optimal_budget_gap.mean) <= 3.0 * report.optimal_budget_gap.std_error;

    auto evaluate = [&](DominanceEntry entry, const StrategySpec& strat) {
        if (strat.kappa * config.claims.limit >= 1.0) {
            entry.skipped = true;
            report.entries.push_back(std::move(entry));
            return;
        }
        // common random numbers: same seed, stream depends only on (seed, path)
        const PathEnsemble ens = simulate_wealth(config, strat, solved.controls, dual_level, spec);
        const std::vector<double> j = per_path_objective(config, ens);
        entry.objective = reduce_mean(j);
        entry.objective_gap = paired_difference(opt_j, j);
        entry.budget_gap = reduce_mean(ens.budget_accumulator);
        entry.budget_gap.mean -= x;
        entry.dominance_pass =
            entry.objective_gap.mean >= -2.0 * entry.objective_gap.std_error;
        entry.budget_pass = entry.budget_gap.mean <= 3.0 * entry.budget_gap.std_error;
        report.entries.push_back(std::move(entry));
    };

    {
        DominanceEntry base;
        base.label = "optimal";
        base.pi = solved.pi;
        base.kappa = solved.kappa;
        StrategySpec strat = opt_spec;
        evaluate(base, strat);
    }
    for (const double off : grid.pi_offsets) {
        DominanceEntry e;
        e.label = fmt_label("pi", off * 100, "%");
        StrategySpec strat = opt_spec;
        strat.pi = solved.pi * (1.0 + off);
        e.pi = strat.pi;
        e.kappa = strat.kappa;
        evaluate(e, strat);
    }
    for (const double off : grid.kappa_offsets) {
        DominanceEntry e;
        e.label = fmt_label("kappa", off * 100, "%");
        StrategySpec strat = opt_spec;
        strat.kappa = solved.kappa * (1.0 + off);
        e.pi = strat.pi;
        e.kappa = strat.kappa;
        evaluate(e, strat);
    }
    for (const double scale : grid.consumption_scales) {
        DominanceEntry e;
        e.label = fmt_scale_label(scale);
        StrategySpec strat = opt_spec;
        strat.consumption.scale = scale;
        e.pi = strat.pi;
        e.kappa = strat.kappa;
        e.consumption_scale = scale;
        evaluate(e, strat);
    }
    return report;
}

} // namespace alm
