#include "alm/simulate.hpp"

#include "alm/errors.hpp"
#include "alm/rng.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

namespace alm {

double crra_utility(double eta, double value) {
    if (eta == 1.0) return std::log(value);
    return std::pow(value, 1.0 - eta) / (1.0 - eta);
}

McEstimate reduce_mean(std::span<const double> values) {
    const std::int64_t n = static_cast<std::int64_t>(values.size());
    McEstimate est;
    est.n = n;
    if (n == 0) return est;

    // Neumaier compensated sums keep the reduction independent of magnitude order
    auto neumaier = [](std::span<const double> xs, auto&& f) {
        double sum = 0.0, comp = 0.0;
        for (const double x : xs) {
            const double v = f(x);
            const double t = sum + v;
            comp += (std::fabs(sum) >= std::fabs(v)) ? (sum - t) + v : (v - t) + sum;
            sum = t;
        }
        return sum + comp;
    };
    const double mean = neumaier(values, [](double x) { return x; }) / static_cast<double>(n);
    est.mean = mean;
    if (n > 1) {
        const double ss = neumaier(values, [mean](double x) { return (x - mean) * (x - mean); });
        est.std_error = std::sqrt(ss / (static_cast<double>(n - 1) * static_cast<double>(n)));
    }
    return est;
}

namespace {

struct JumpEvent {
    double time;
    double mark;
};

struct PathState {
    double terminal_wealth = 0.0;
    double consumption_utility = 0.0;
    double deflator_terminal = 0.0;
    double deflator_mid = 0.0;
    double budget_consumption = 0.0;  // integral of H gamma dt
    int jump_count = 0;
};

struct EngineContext {
    const ModelConfig& config;
    const StrategySpec& strategy;
    const DualControls& controls;
    double dual_level;         // x / X(1)
    const SimulationSpec& spec;
    double jump_compensator;   // lambda * (E[phi2(Y)] - 1)
    double grid_dt;
    int mid_index;
    TraceSink* trace;
};

double consumption_at(const EngineContext& ctx, double phi, double deflator) {
    const auto& rule = ctx.strategy.consumption;
    switch (rule.kind) {
        case ConsumptionKind::Zero:
            return 0.0;
        case ConsumptionKind::DualOptimal:
            return rule.scale * ctx.dual_level *
                   std::pow(deflator, -1.0 / ctx.config.preferences.eta);
        case ConsumptionKind::LogOptimal:
            // gamma = x Phi / (T + 1): the zero-consumption wealth over T + 1
            return rule.scale * ctx.config.preferences.initial_wealth * phi /
                   (ctx.config.preferences.horizon + 1.0);
    }
    return 0.0;
}

PathState run_path(const EngineContext& ctx, std::int64_t path) {
    const auto& cfg = ctx.config;
    const auto& strat = ctx.strategy;
    const double T = cfg.preferences.horizon;
    const double x = cfg.preferences.initial_wealth;
    const double lambda = cfg.liability.lambda;
    const int n = ctx.spec.n_steps;

    const std::uint64_t base = ctx.spec.antithetic ? static_cast<std::uint64_t>(path / 2)
                                                   : static_cast<std::uint64_t>(path);
    const double sign = (ctx.spec.antithetic && (path & 1)) ? -1.0 : 1.0;
    rng::Stream jump_stream(ctx.spec.seed, base, 0);
    rng::Stream diff_stream(ctx.spec.seed, base, 1);

    // exact exponential arrivals; marks from the truncated claim law
    std::vector<JumpEvent> jumps;
    if (lambda > 0.0) {
        double t = jump_stream.exponential(lambda);
        while (t < T) {
            jumps.push_back({t, sample(cfg.claims, jump_stream)});
            t += jump_stream.exponential(lambda);
        }
    }

    // wealth loadings
    const double mu_v = cfg.market.r + strat.pi * (cfg.market.mu - cfg.market.r) +
                        strat.kappa * (cfg.liability.premium - cfg.liability.a);
    const double s1 = strat.pi * cfg.market.sigma - strat.kappa * cfg.liability.rho * cfg.liability.b;
    const double s2 = -strat.kappa * cfg.liability.b *
                      std::sqrt(1.0 - cfg.liability.rho * cfg.liability.rho);
    // deflator loadings
    const double theta = cfg.theta;
    const double phi1 = ctx.controls.phi1;
    const double drift_h = -cfg.market.r - ctx.jump_compensator -
                           0.5 * (theta * theta + phi1 * phi1);
    const double drift_logv = mu_v - 0.5 * (s1 * s1 + s2 * s2);

    const bool log_scheme = ctx.spec.scheme == Scheme::LogEuler;
    const bool want_utility = strat.consumption.kind != ConsumptionKind::Zero;
    const double eta = cfg.preferences.eta;

    double log_phi = 0.0, log_h = 0.0;   // LogEuler state
    double v_lvl = x, h_lvl = 1.0;       // Euler state
    double consumed = 0.0;               // integral of gamma / Phi (LogEuler)
    double cum_consumption = 0.0;        // integral of gamma (for the trace)
    double prev_t = 0.0;

    PathState out;
    std::size_t next_jump = 0;

    // grid-point integrand memory for the trapezoids
    double prev_rate = 0.0, prev_a_int = 0.0, prev_b_int = 0.0, prev_u_int = 0.0;
    {
        const double g0 = consumption_at(ctx, 1.0, 1.0);
        prev_rate = g0;
        prev_a_int = g0;             // gamma / Phi at t = 0
        prev_b_int = g0;             // H gamma at t = 0
        prev_u_int = want_utility ? crra_utility(eta, g0) : 0.0;
        if (ctx.trace != nullptr) ctx.trace->row(path, 0.0, x, 1.0, 0.0, g0);
    }
    // Euler consumption uses the rate frozen at the last grid point
    double euler_rate = prev_rate;

    for (int k = 1; k <= n; ++k) {
        const double t_grid = (k == n) ? T : k * ctx.grid_dt;
        // advance through any jumps inside (prev_t, t_grid]
        for (;;) {
            const bool jump_next = next_jump < jumps.size() && jumps[next_jump].time <= t_grid;
            const double t_target = jump_next ? jumps[next_jump].time : t_grid;
            const double dt = t_target - prev_t;
            if (dt > 0.0) {
                const double z1 = sign * diff_stream.normal();
                const double z2 = sign * diff_stream.normal();
                const double rt = std::sqrt(dt);
                const double dw1 = rt * z1;
                const double dw2 = rt * z2;
                if (log_scheme) {
                    log_phi += drift_logv * dt + s1 * dw1 + s2 * dw2;
                    log_h += drift_h * dt - theta * dw1 - phi1 * dw2;
                } else {
                    v_lvl = v_lvl * (1.0 + mu_v * dt + s1 * dw1 + s2 * dw2) - euler_rate * dt;
                    h_lvl = h_lvl * (1.0 + (-cfg.market.r - ctx.jump_compensator) * dt -
                                     theta * dw1 - phi1 * dw2);
                    if (v_lvl <= 0.0 || h_lvl <= 0.0) {
                        throw PositivityBreach("euler step drove wealth or deflator non-positive at t = " +
                                               std::to_string(t_target));
                    }
                }
                prev_t = t_target;
            }
            if (!jump_next) break;
            const double y = jumps[next_jump].mark;
            ++next_jump;
            ++out.jump_count;
            const double wealth_factor = 1.0 - strat.kappa * y;
            if (wealth_factor <= 0.0) {
                throw PositivityBreach("claim of size " + std::to_string(y) +
                                       " wiped out wealth (kappa too large)");
            }
            if (log_scheme) {
                log_phi += std::log1p(-strat.kappa * y);
                log_h += -ctx.controls.eta * std::log1p(-ctx.controls.kappa * y);
            } else {
                v_lvl *= wealth_factor;
                h_lvl *= ctx.controls.jump_control(y);
            }
        }

        // grid point reached: trapezoid updates and state records
        const double phi = log_scheme ? std::exp(log_phi) : 0.0;
        const double deflator = log_scheme ? std::exp(log_h) : h_lvl;
        double wealth;
        double rate;
        if (log_scheme) {
            rate = consumption_at(ctx, phi, deflator);
            const double a_int = rate / phi;
            consumed += 0.5 * ctx.grid_dt * (prev_a_int + a_int);
            wealth = phi * (x - consumed);
            prev_a_int = a_int;
        } else {
            // feedback form of the log-optimal rule under the level scheme
            rate = (strat.consumption.kind == ConsumptionKind::LogOptimal)
                       ? strat.consumption.scale * v_lvl / (T + 1.0 - t_grid)
                       : consumption_at(ctx, 0.0, deflator);
            euler_rate = rate;
            wealth = v_lvl;
        }
        if (wealth <= 0.0) {
            throw PositivityBreach("consumption drove wealth non-positive at step " +
                                   std::to_string(k));
        }

        cum_consumption += 0.5 * ctx.grid_dt * (prev_rate + rate);
        prev_rate = rate;
        const double b_int = deflator * rate;
        out.budget_consumption += 0.5 * ctx.grid_dt * (prev_b_int + b_int);
        prev_b_int = b_int;
        if (want_utility) {
            const double u_int = crra_utility(eta, rate);
            out.consumption_utility += 0.5 * ctx.grid_dt * (prev_u_int + u_int);
            prev_u_int = u_int;
        }
        if (k == ctx.mid_index) out.deflator_mid = deflator;
        if (k == n) {
            out.terminal_wealth = wealth;
            out.deflator_terminal = deflator;
        }
        if (ctx.trace != nullptr) {
            ctx.trace->row(path, t_grid, wealth, deflator, cum_consumption, rate);
        }
    }
    if (ctx.mid_index == 0) out.deflator_mid = 1.0;
    return out;
}

} // namespace

PathEnsemble simulate_wealth(const ModelConfig& config, const StrategySpec& strategy,
                             const DualControls& controls, double dual_consumption_level,
                             const SimulationSpec& spec, TraceSink* trace) {
    if (spec.n_paths < 1) throw InvalidParams({"sim.n_paths: must be >= 1"});
    if (spec.n_steps < 1) throw InvalidParams({"sim.n_steps: must be >= 1"});
    if (strategy.kappa * config.claims.limit >= 1.0) {
        throw DomainError("simulate_wealth: kappa * c >= 1 breaks jump positivity");
    }

    EngineContext ctx{config, strategy, controls, dual_consumption_level, spec, 0.0,
                      config.preferences.horizon / spec.n_steps, spec.n_steps / 2, trace};
    if (config.liability.lambda > 0.0) {
        const double m = expect(config.claims,
                                Transform::deflator_moment(controls.kappa, controls.eta, 1.0)) - 1.0;
        ctx.jump_compensator = config.liability.lambda * m;
    }

    PathEnsemble ens;
    const std::int64_t n = spec.n_paths;
    ens.terminal_wealth.resize(n);
    ens.consumption_utility.resize(n);
    ens.deflator_terminal.resize(n);
    ens.deflator_mid.resize(n);
    ens.budget_accumulator.resize(n);
    ens.jump_counts.resize(n);
    ens.horizon = config.preferences.horizon;
    ens.mid_time = ctx.mid_index * ctx.grid_dt;

    int workers = spec.n_threads > 0 ? spec.n_threads
                                     : static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;
    if (trace != nullptr) workers = 1;  // keep dump rows in path order
    workers = static_cast<int>(std::min<std::int64_t>(workers, n));

    auto run_block = [&](std::int64_t lo, std::int64_t hi) {
        for (std::int64_t i = lo; i < hi; ++i) {
            const PathState st = run_path(ctx, i);
            ens.terminal_wealth[i] = st.terminal_wealth;
            ens.consumption_utility[i] = st.consumption_utility;
            ens.deflator_terminal[i] = st.deflator_terminal;
            ens.deflator_mid[i] = st.deflator_mid;
            ens.budget_accumulator[i] =
                st.deflator_terminal * st.terminal_wealth + st.budget_consumption;
            ens.jump_counts[i] = st.jump_count;
        }
    };

    if (workers == 1) {
        run_block(0, n);
    } else {
        std::vector<std::thread> pool;
        std::exception_ptr first_error;
        std::mutex error_mutex;
        const std::int64_t chunk = (n + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            const std::int64_t lo = w * chunk;
            const std::int64_t hi = std::min<std::int64_t>(lo + chunk, n);
            if (lo >= hi) break;
            pool.emplace_back([&, lo, hi] {
                try {
                    run_block(lo, hi);
                } catch (...) {
                    std::scoped_lock lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        if (first_error) std::rethrow_exception(first_error);
    }
    return ens;
}

PathEnsemble simulate_deflator(const ModelConfig& config, const DualControls& controls,
                               const SimulationSpec& spec) {
    StrategySpec trivial;
    return simulate_wealth(config, trivial, controls, 0.0, spec);
}

McEstimate estimate_objective(const ModelConfig& config, const PathEnsemble& ensemble) {
    const double eta = config.preferences.eta;
    std::vector<double> j(ensemble.terminal_wealth.size());
    std::int64_t bad = 0;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const double u2 = crra_utility(eta, ensemble.terminal_wealth[i]);
        j[i] = ensemble.consumption_utility[i] + u2;
        if (!std::isfinite(j[i])) ++bad;
    }
    if (bad > 0) {
        throw UtilityOverflow("utility overflowed on " + std::to_string(bad) +
                              " paths (terminal wealth underflow with eta > 1)");
    }
    return reduce_mean(j);
}

} // namespace alm
