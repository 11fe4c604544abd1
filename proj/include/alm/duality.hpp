#pragma once

#include "alm/model.hpp"
#include "alm/root_finding.hpp"

namespace alm {

// Dual controls of the CRRA optimizer: a scalar diffusion control and the
// jump control y -> (1 - kappa*y)^(-eta), carried as its (kappa, eta) pair.
struct DualControls {
    double phi1 = 0.0;
    double kappa = 0.0;
    double eta = 1.0;

    // phi2(y)
    double jump_control(double y) const;
};

struct OptimalStrategy {
    double kappa = 0.0;       // underwriting volume per unit wealth
    double pi = 0.0;          // risky-asset proportion
    double pi_merton = 0.0;   // (mu - r) / (eta sigma^2)
    DualControls controls;
    double h_at_zero = 0.0;   // existence margin
    double dual_rate = 0.0;   // Lambda: growth exponent of E[H_t^(1 - 1/eta)]
    double x_one = 0.0;       // integral of e^(Lambda t) over [0, T] plus e^(Lambda T)
    double y_of_x = 0.0;      // (x / x_one)^(-eta)
};

struct SolverOptions {
    double bracket_tol = 1e-10;
    double residual_tol = 1e-9;
    bool allow_negative_kappa = false;
    int max_iter = 200;
};

struct SolveReport {
    OptimalStrategy strategy;
    int iterations = 0;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    double residual = 0.0;
};

// h(kappa) = p - a + b [rho*theta - (1-rho^2) eta b kappa]
//            - lambda E[ Y / (1 - kappa Y)^eta ]
// Strictly decreasing on [0, 1/c); defined for every kappa with kappa*c < 1.
double eval_h(const ModelConfig& config, double kappa);

// h(0); strictly positive guarantees a unique root in (0, 1/c).
double existence_margin(const ModelConfig& config);

// Unique zero of h in [0, 1/c). Throws NoRootInRange when h(0) <= 0 unless
// allow_negative_kappa extends the search below zero.
SolveReport solve_kappa(const ModelConfig& config, const SolverOptions& opts = {});

// (mu - r) / (eta sigma^2)
double merton_fraction(const ModelConfig& config);

// pi(kappa) = merton + (rho b / sigma) kappa
double optimal_pi(const ModelConfig& config, double kappa);

// phi1 = -eta b kappa sqrt(1 - rho^2); phi2 descriptor (kappa, eta)
DualControls dual_controls(const ModelConfig& config, double kappa);

// Value of the dual feasibility constraint at arbitrary controls:
//   p - a + b [rho*theta + sqrt(1-rho^2) phi1] - lambda E[Y phi2(Y)]
// Zero identifies a feasible deflator.
double dual_feasibility(const ModelConfig& config, const DualControls& controls);

struct DualRate {
    double lambda_rate = 0.0;  // Lambda
    double x_one = 0.0;
};

// E[H_t^(1-1/eta)] = e^(Lambda t) with the constant exponent assembled from
// the deflator's drift, diffusion and jump-compensator contributions;
// x_one = integral_0^T e^(Lambda t) dt + e^(Lambda T). eta == 1 short-circuits
// to (0, T + 1).
DualRate dual_rate_and_x1(const ModelConfig& config, double kappa);

// Optimal consumption rate gamma_t = (x / x_one) * H_t^(-1/eta).
double consumption_rate(const ModelConfig& config, const OptimalStrategy& strategy,
                        double deflator_value, double t);

// Assembles the full strategy record around a given kappa.
OptimalStrategy build_strategy(const ModelConfig& config, double kappa, double h_at_zero);

} // namespace alm
