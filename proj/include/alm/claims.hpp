#pragma once

#include "alm/quadrature.hpp"
#include "alm/rng.hpp"

#include <string>
#include <variant>
#include <vector>

namespace alm {

// Truncation conventions for the claim law on [0, c].
//   Atom:         law of Z ^ c, point mass P(Z > c) sitting at c
//   Restriction:  sub-probability measure, mass above c discarded
//   Renormalized: conditional law of Z given Z <= c
enum class Truncation { Atom, Restriction, Renormalized };

struct GammaClaims {
    double shape = 1.0;   // alpha
    double scale = 1.0;   // beta
};

struct ParetoClaims {
    double alpha = 1.0;
    double gamma = 1.0;
};

struct PointMassClaims {
    double y0 = 1.0;
};

struct ClaimDistribution {
    std::variant<GammaClaims, ParetoClaims, PointMassClaims> family;
    double limit = 1.0;   // policy cap c
    Truncation mode = Truncation::Atom;
};

// Integrand transforms used by the dual characterization. The power
// transforms require kappa * c < 1 so they stay finite on [0, c].
struct Transform {
    enum class Kind {
        Identity,        // g(y) = y
        JumpExposure,    // g(y) = y / (1 - kappa*y)^eta        (DualPower)
        DeflatorMoment,  // g(y) = (1 - kappa*y)^(-eta*q)       (DeflatorPower)
        Unit,            // g(y) = 1                            (AffineTest)
    };

    Kind kind = Kind::Identity;
    double kappa = 0.0;
    double eta = 0.0;
    double q = 1.0;

    static Transform identity() { return {Kind::Identity, 0.0, 0.0, 1.0}; }
    static Transform jump_exposure(double kappa, double eta) {
        return {Kind::JumpExposure, kappa, eta, 1.0};
    }
    static Transform deflator_moment(double kappa, double eta, double q) {
        return {Kind::DeflatorMoment, kappa, eta, q};
    }
    static Transform unit() { return {Kind::Unit, 0.0, 0.0, 1.0}; }

    bool needs_domain_check() const {
        return kind == Kind::JumpExposure || kind == Kind::DeflatorMoment;
    }

    double operator()(double y) const;
};

// Density of the untruncated base variable Z (Gamma or Pareto only).
double pdf(const ClaimDistribution& dist, double y);

// P(Z > y) of the untruncated base variable.
double tail(const ClaimDistribution& dist, double y);

// E[g(Y)] under the configured truncation mode, adaptive quadrature on [0, c]
// plus the atom term when mode == Atom.
double expect(const ClaimDistribution& dist, const Transform& g, const QuadOptions& opts = {});

// One draw from the truncated claim law. Restriction mode has no sampling
// counterpart and throws UnsupportedMode.
double sample(const ClaimDistribution& dist, rng::Stream& stream);

// Field-level parameter violations; empty when the distribution is valid.
std::vector<std::string> check_params(const ClaimDistribution& dist);

std::string family_name(const ClaimDistribution& dist);
std::string truncation_name(Truncation mode);

} // namespace alm
