#include "alm/claims.hpp"

#include "alm/errors.hpp"
#include "alm/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace alm {

double Transform::operator()(double y) const {
    switch (kind) {
        case Kind::Identity:
            return y;
        case Kind::JumpExposure:
            return y * std::pow(1.0 - kappa * y, -eta);
        case Kind::DeflatorMoment:
            return std::pow(1.0 - kappa * y, -eta * q);
        case Kind::Unit:
            return 1.0;
    }
    return 0.0;
}

double pdf(const ClaimDistribution& dist, double y) {
    if (y < 0.0) throw DomainError("pdf: y must be >= 0");
    if (const auto* g = std::get_if<GammaClaims>(&dist.family)) {
        if (y == 0.0) {
            if (g->shape < 1.0) return std::numeric_limits<double>::infinity();
            if (g->shape == 1.0) return 1.0 / g->scale;
            return 0.0;
        }
        return std::exp((g->shape - 1.0) * std::log(y) - y / g->scale
                        - std::lgamma(g->shape) - g->shape * std::log(g->scale));
    }
    if (const auto* p = std::get_if<ParetoClaims>(&dist.family)) {
        return p->alpha * std::pow(p->gamma, p->alpha) / std::pow(y + p->gamma, p->alpha + 1.0);
    }
    throw UnsupportedForPointMass("pdf: point-mass claims have no density");
}

double tail(const ClaimDistribution& dist, double y) {
    if (y < 0.0) throw DomainError("tail: y must be >= 0");
    if (const auto* g = std::get_if<GammaClaims>(&dist.family)) {
        return gamma_q(g->shape, y / g->scale);
    }
    if (const auto* p = std::get_if<ParetoClaims>(&dist.family)) {
        return std::pow(p->gamma / (y + p->gamma), p->alpha);
    }
    const auto& pm = std::get<PointMassClaims>(dist.family);
    return y < pm.y0 ? 1.0 : 0.0;
}

namespace {

// integral of g(y) f_Z(y) over [0, c]
double density_integral(const ClaimDistribution& dist, const Transform& g,
                        const QuadOptions& opts) {
    const double c = dist.limit;
    if (const auto* gm = std::get_if<GammaClaims>(&dist.family);
        gm != nullptr && gm->shape < 1.0) {
        // integrable singularity y^(alpha-1) at zero: substitute t = y^alpha on
        // [0, eps] so the transformed integrand is bounded, plain panel beyond
        const double alpha = gm->shape;
        const double eps = std::min(c, gm->scale);
        const double norm = 1.0 / (std::tgamma(alpha) * std::pow(gm->scale, alpha));
        auto transformed = [&](double t) {
            const double y = std::pow(t, 1.0 / alpha);
            return (norm / alpha) * std::exp(-y / gm->scale) * g(y);
        };
        double val = integrate(transformed, 0.0, std::pow(eps, alpha), opts);
        if (eps < c) {
            auto plain = [&](double y) { return pdf(dist, y) * g(y); };
            val += integrate(plain, eps, c, opts);
        }
        return val;
    }
    auto plain = [&](double y) { return pdf(dist, y) * g(y); };
    return integrate(plain, 0.0, c, opts);
}

} // namespace

double expect(const ClaimDistribution& dist, const Transform& g, const QuadOptions& opts) {
    if (g.needs_domain_check() && g.kappa * dist.limit >= 1.0) {
        throw DomainError("expect: kappa * c >= 1, transform unbounded on support");
    }
    if (const auto* pm = std::get_if<PointMassClaims>(&dist.family)) {
        // whole mass sits at y0 <= c; every truncation mode yields the same law
        return g(std::min(pm->y0, dist.limit));
    }
    const double integral = density_integral(dist, g, opts);
    switch (dist.mode) {
        case Truncation::Atom:
            return integral + g(dist.limit) * tail(dist, dist.limit);
        case Truncation::Restriction:
            return integral;
        case Truncation::Renormalized:
            return integral / (1.0 - tail(dist, dist.limit));
    }
    return integral;
}

double sample(const ClaimDistribution& dist, rng::Stream& stream) {
    if (const auto* pm = std::get_if<PointMassClaims>(&dist.family)) {
        return std::min(pm->y0, dist.limit);
    }
    auto draw = [&]() {
        if (const auto* g = std::get_if<GammaClaims>(&dist.family)) {
            return stream.gamma(g->shape, g->scale);
        }
        const auto& p = std::get<ParetoClaims>(dist.family);
        return stream.pareto(p.alpha, p.gamma);
    };
    switch (dist.mode) {
        case Truncation::Atom:
            return std::min(draw(), dist.limit);
        case Truncation::Renormalized: {
            for (;;) {
                const double z = draw();
                if (z <= dist.limit) return z;
            }
        }
        case Truncation::Restriction:
            throw UnsupportedMode("sample: restriction mode is a sub-probability measure");
    }
    return 0.0;
}

std::vector<std::string> check_params(const ClaimDistribution& dist) {
    std::vector<std::string> out;
    if (!(dist.limit > 0.0) || !std::isfinite(dist.limit)) {
        out.push_back("claims.limit: policy cap c must be positive and finite");
    }
    if (const auto* g = std::get_if<GammaClaims>(&dist.family)) {
        if (!(g->shape > 0.0) || !std::isfinite(g->shape)) out.push_back("claims.alpha: gamma shape must be > 0");
        if (!(g->scale > 0.0) || !std::isfinite(g->scale)) out.push_back("claims.beta: gamma scale must be > 0");
    } else if (const auto* p = std::get_if<ParetoClaims>(&dist.family)) {
        if (!(p->alpha > 0.0) || !std::isfinite(p->alpha)) out.push_back("claims.alpha: pareto exponent must be > 0");
        if (!(p->gamma > 0.0) || !std::isfinite(p->gamma)) out.push_back("claims.gamma: pareto scale must be > 0");
    } else {
        const auto& pm = std::get<PointMassClaims>(dist.family);
        if (!(pm.y0 > 0.0) || !std::isfinite(pm.y0)) {
            out.push_back("claims.y0: point mass must be > 0");
        } else if (dist.limit > 0.0 && pm.y0 > dist.limit) {
            out.push_back("claims.y0: point mass must not exceed the policy cap c");
        }
    }
    return out;
}

std::string family_name(const ClaimDistribution& dist) {
    if (std::holds_alternative<GammaClaims>(dist.family)) return "gamma";
    if (std::holds_alternative<ParetoClaims>(dist.family)) return "pareto";
    return "pointmass";
}

std::string truncation_name(Truncation mode) {
    switch (mode) {
        case Truncation::Atom: return "atom";
        case Truncation::Restriction: return "restriction";
        case Truncation::Renormalized: return "renormalized";
    }
    return "?";
}

} // namespace alm
