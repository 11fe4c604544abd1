#pragma once

#include "alm/claims.hpp"

namespace alm {

// generalized Black-Scholes market, constant coefficients
struct MarketParams {
    double r = 0.0;       // risk-free rate per unit time
    double mu = 0.0;      // stock drift per unit time
    double sigma = 1.0;   // stock volatility per sqrt-unit-time
};

// perturbed jump-diffusion risk process per policy
struct LiabilityParams {
    double a = 0.0;        // drift per unit time
    double b = 0.0;        // diffusion scale
    double rho = 0.0;      // correlation with the stock, in [-1, 1]
    double lambda = 0.0;   // claim-arrival intensity per unit time
    double premium = 0.0;  // premium rate p per policy per unit time
};

struct Preferences {
    double eta = 1.0;             // CRRA risk-aversion power, > 0; eta == 1 is log
    double horizon = 1.0;         // terminal time T
    double initial_wealth = 1.0;  // x
};

struct ModelConfig {
    MarketParams market;
    LiabilityParams liability;
    ClaimDistribution claims;
    Preferences preferences;

    double theta = 0.0;  // (mu - r) / sigma, attached by validate()
};

// Validates every field, attaches theta. Throws InvalidParams carrying one
// message per violation. Idempotent on already-valid configs.
ModelConfig validate(const ModelConfig& raw);

// theta = (mu - r) / sigma
double market_price_of_risk(const ModelConfig& config);

} // namespace alm
