#include "alm/duality.hpp"

#include "alm/errors.hpp"

#include <cmath>

namespace alm {

double DualControls::jump_control(double y) const {
    return std::pow(1.0 - kappa * y, -eta);
}

namespace {

// quadrature tightens near the bound where the integrand steepens at y = c
QuadOptions quad_options_for(const ModelConfig& config, double kappa) {
    QuadOptions opts;
    if (kappa * config.claims.limit > 0.95) {
        opts.rel_tol = 1e-12;
        opts.abs_tol = 1e-13;
    }
    return opts;
}

} // namespace

double eval_h(const ModelConfig& config, double kappa) {
    const auto& l = config.liability;
    if (kappa * config.claims.limit >= 1.0) {
        throw DomainError("eval_h: kappa * c >= 1");
    }
    double jump_term = 0.0;
    if (l.lambda > 0.0) {
        jump_term = l.lambda * expect(config.claims,
                                      Transform::jump_exposure(kappa, config.preferences.eta),
                                      quad_options_for(config, kappa));
    }
    return l.premium - l.a
         + l.b * (l.rho * config.theta - (1.0 - l.rho * l.rho) * config.preferences.eta * l.b * kappa)
         - jump_term;
}

double existence_margin(const ModelConfig& config) {
    return eval_h(config, 0.0);
}

double merton_fraction(const ModelConfig& config) {
    const auto& m = config.market;
    return (m.mu - m.r) / (config.preferences.eta * m.sigma * m.sigma);
}

double optimal_pi(const ModelConfig& config, double kappa) {
    return merton_fraction(config) + (config.liability.rho * config.liability.b / config.market.sigma) * kappa;
}

DualControls dual_controls(const ModelConfig& config, double kappa) {
    if (kappa * config.claims.limit >= 1.0) {
        throw DomainError("dual_controls: kappa * c >= 1");
    }
    const auto& l = config.liability;
    const double eta = config.preferences.eta;
    DualControls ctrl;
    ctrl.phi1 = -eta * l.b * kappa * std::sqrt(1.0 - l.rho * l.rho);
    ctrl.kappa = kappa;
    ctrl.eta = eta;
    return ctrl;
}

double dual_feasibility(const ModelConfig& config, const DualControls& controls) {
    const auto& l = config.liability;
    double jump_term = 0.0;
    if (l.lambda > 0.0) {
        jump_term = l.lambda * expect(config.claims,
                                      Transform::jump_exposure(controls.kappa, controls.eta),
                                      quad_options_for(config, controls.kappa));
    }
    return l.premium - l.a
         + l.b * (l.rho * config.theta + std::sqrt(1.0 - l.rho * l.rho) * controls.phi1)
         - jump_term;
}

DualRate dual_rate_and_x1(const ModelConfig& config, double kappa) {
    const double eta = config.preferences.eta;
    const double T = config.preferences.horizon;
    if (eta == 1.0) {
        return {0.0, T + 1.0};   // H^0 == 1: no rate, x_one = T + 1 exactly
    }
    if (kappa * config.claims.limit >= 1.0) {
        throw DomainError("dual_rate_and_x1: kappa * c >= 1");
    }
    const auto& l = config.liability;
    const double q = 1.0 - 1.0 / eta;
    const DualControls ctrl = dual_controls(config, kappa);
    const double theta = config.theta;
    const double diff2 = theta * theta + ctrl.phi1 * ctrl.phi1;

    // moment of order q of the deflator's stochastic exponential:
    // drift -q(r + lambda m), Gaussian quadratic -q(1-q)/2 * |(theta, phi1)|^2,
    // jump moment lambda (E[phi2^q] - 1), with m = E[phi2] - 1
    double jump_part = 0.0;
    if (l.lambda > 0.0) {
        const QuadOptions opts = quad_options_for(config, kappa);
        const double m1 = expect(config.claims, Transform::deflator_moment(kappa, eta, 1.0), opts) - 1.0;
        const double mq = expect(config.claims, Transform::deflator_moment(kappa, eta, q), opts) - 1.0;
        jump_part = -q * l.lambda * m1 + l.lambda * mq;
    }
    const double rate = -q * config.market.r - 0.5 * q * (1.0 - q) * diff2 + jump_part;

    double integral;  // of e^(rate * t) over [0, T]
    if (std::fabs(rate) < 1e-300) {
        integral = T;
    } else {
        integral = std::expm1(rate * T) / rate;
    }
    return {rate, integral + std::exp(rate * T)};
}

double consumption_rate(const ModelConfig& config, const OptimalStrategy& strategy,
                        double deflator_value, double /*t*/) {
    const double x = config.preferences.initial_wealth;
    return (x / strategy.x_one) * std::pow(deflator_value, -1.0 / config.preferences.eta);
}

OptimalStrategy build_strategy(const ModelConfig& config, double kappa, double h_at_zero) {
    OptimalStrategy s;
    s.kappa = kappa;
    s.pi_merton = merton_fraction(config);
    s.pi = optimal_pi(config, kappa);
    s.controls = dual_controls(config, kappa);
    s.h_at_zero = h_at_zero;
    const DualRate dr = dual_rate_and_x1(config, kappa);
    s.dual_rate = dr.lambda_rate;
    s.x_one = dr.x_one;
    s.y_of_x = std::pow(config.preferences.initial_wealth / s.x_one, -config.preferences.eta);
    return s;
}

SolveReport solve_kappa(const ModelConfig& config, const SolverOptions& opts) {
    const double c = config.claims.limit;
    const double upper_limit = 1.0 / c - 1e-12 * c;
    const double h0 = existence_margin(config);

    RootOptions ropts;
    ropts.x_tol = opts.bracket_tol;
    ropts.max_iter = opts.max_iter;

    double lo, hi;
    if (h0 > 0.0) {
        // root lies in (0, 1/c): walk the upper end toward 1/c until h < 0
        lo = 0.0;
        double gap = 0.5 / c;
        hi = 1.0 / c - gap;
        while (eval_h(config, hi) > 0.0) {
            gap *= 0.25;
            hi = 1.0 / c - gap;
            if (hi > upper_limit) {
                throw NumericalFailure("solve_kappa: could not bracket against 1/c");
            }
        }
    } else if (h0 == 0.0) {
        SolveReport rep;
        rep.strategy = build_strategy(config, 0.0, h0);
        rep.residual = 0.0;
        return rep;
    } else {
        if (!opts.allow_negative_kappa) throw NoRootInRange(h0);
        // h increases toward +inf as kappa -> -inf; expand downward
        hi = 0.0;
        lo = -1.0 / c;
        while (eval_h(config, lo) < 0.0) {
            lo *= 2.0;
            if (!std::isfinite(lo)) {
                throw NumericalFailure("solve_kappa: no bracket for negative kappa");
            }
        }
    }

    const RootResult root = brent([&](double k) { return eval_h(config, k); }, lo, hi, ropts);
    if (std::fabs(root.f_root) > opts.residual_tol) {
        throw NumericalFailure("solve_kappa: residual " + std::to_string(root.f_root) +
                               " exceeds tolerance");
    }

    SolveReport rep;
    rep.strategy = build_strategy(config, root.root, h0);
    rep.iterations = root.iterations;
    rep.bracket_lo = root.bracket_lo;
    rep.bracket_hi = root.bracket_hi;
    rep.residual = root.f_root;
    return rep;
}

} // namespace alm
