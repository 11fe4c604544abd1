#include "alm/model.hpp"

#include "alm/errors.hpp"

#include <cmath>

namespace alm {

ModelConfig validate(const ModelConfig& raw) {
    std::vector<std::string> bad;

    const auto& m = raw.market;
    if (!(m.sigma > 0.0) || !std::isfinite(m.sigma)) bad.push_back("market.sigma: must be > 0");
    if (!std::isfinite(m.r)) bad.push_back("market.r: must be finite");
    if (!std::isfinite(m.mu)) bad.push_back("market.mu: must be finite");

    const auto& l = raw.liability;
    if (!std::isfinite(l.a)) bad.push_back("liability.a: must be finite");
    if (!(l.b >= 0.0) || !std::isfinite(l.b)) bad.push_back("liability.b: must be >= 0");
    if (!(l.rho >= -1.0 && l.rho <= 1.0)) bad.push_back("liability.rho: must lie in [-1, 1]");
    if (!(l.lambda >= 0.0) || !std::isfinite(l.lambda)) bad.push_back("liability.lambda: must be >= 0");
    if (!std::isfinite(l.premium)) bad.push_back("liability.premium: must be finite");

    const auto& p = raw.preferences;
    if (!(p.eta > 0.0) || !std::isfinite(p.eta)) bad.push_back("preferences.eta: must be > 0");
    if (!(p.horizon > 0.0) || !std::isfinite(p.horizon)) bad.push_back("preferences.horizon: must be > 0");
    if (!(p.initial_wealth > 0.0) || !std::isfinite(p.initial_wealth)) {
        bad.push_back("preferences.initial_wealth: must be > 0");
    }

    for (auto& msg : check_params(raw.claims)) bad.push_back(std::move(msg));

    if (!bad.empty()) throw InvalidParams(std::move(bad));

    ModelConfig cfg = raw;
    cfg.theta = (m.mu - m.r) / m.sigma;
    return cfg;
}

double market_price_of_risk(const ModelConfig& config) {
    return (config.market.mu - config.market.r) / config.market.sigma;
}

} // namespace alm
