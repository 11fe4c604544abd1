#pragma once

#include <cmath>
#include <cstdint>

namespace alm::rng {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// xoshiro256++ with per-(seed, path, substream) state derivation via splitmix64.
// Streams are counter-derived: the draw sequence of a path depends only on the
// triple, never on which worker executes it.
class Stream {
public:
    Stream(std::uint64_t seed, std::uint64_t path, std::uint64_t substream) {
        std::uint64_t mix = seed;
        splitmix64(mix);
        mix ^= 0x100000001b3ULL * path + 0x9e3779b9ULL * substream;
        s_[0] = splitmix64(mix);
        s_[1] = splitmix64(mix);
        s_[2] = splitmix64(mix);
        s_[3] = splitmix64(mix);
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // uniform on (0, 1); never returns an endpoint so logs stay finite
    double uniform() {
        return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
    }

    // standard normal, Box-Muller with one cached mate
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double rad = std::sqrt(-2.0 * std::log(u1));
        const double ang = 6.283185307179586476925286766559 * u2;
        spare_ = rad * std::sin(ang);
        has_spare_ = true;
        return rad * std::cos(ang);
    }

    // Exp(rate), mean 1/rate
    double exponential(double rate) {
        return -std::log(uniform()) / rate;
    }

    // Gamma(shape, scale), Marsaglia-Tsang; shape < 1 via the boost G(a+1)*U^{1/a}
    double gamma(double shape, double scale) {
        if (shape < 1.0) {
            const double u = uniform();
            return gamma(shape + 1.0, scale) * std::pow(u, 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x, v;
            do {
                x = normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = uniform();
            if (u < 1.0 - 0.0331 * (x * x) * (x * x)) return d * v * scale;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v * scale;
        }
    }

    // Pareto (Lomax) with density alpha*g^alpha / (y+g)^(alpha+1) on y >= 0
    double pareto(double alpha, double g) {
        const double u = uniform();
        return g * (std::pow(u, -1.0 / alpha) - 1.0);
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t s_[4];
    bool has_spare_ = false;
    double spare_ = 0.0;
};

} // namespace alm::rng
