#pragma once

#include "tentcode/rational.hpp"

#include <vector>

namespace tentcode {

// Slope mu = c/d of the tent map, restricted to the expanding regime
// 1 < mu < 2 (equivalently d < c < 2d).
struct TentParams {
    Int c;
    Int d;

    TentParams(const Int& c_, const Int& d_) : c(c_), d(d_) { validate(); }

    static TentParams parse(const std::string& s) {
        Rational r = Rational::parse(s);
        return TentParams(r.num(), r.den());
    }

    Rational mu() const { return Rational(c, d); }
    Rational half_mu() const { return Rational(c, 2 * d); }  // f(1/2) = mu/2

    std::string str() const { return mu().str(); }

private:
    void validate() const {
        if (c <= 0 || d <= 0) throw std::domain_error("tent slope: c, d must be positive");
        Int g;
        mpz_gcd(g.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
        if (g != 1) throw std::domain_error("tent slope: c/d must be in lowest terms");
        if (!(d < c && c < 2 * d)) throw std::domain_error("tent slope: need 1 < c/d < 2");
    }
};

inline const Rational& half() {
    static const Rational h(1, 2);
    return h;
}

// f(x) = mu * min(x, 1-x) on [0, 1]
inline Rational tent_apply(const TentParams& p, const Rational& x) {
    if (x < Rational(0) || x > Rational(1)) throw std::domain_error("tent_apply: x must be in [0, 1]");
    if (x <= half()) return p.mu() * x;
    return p.mu() * (Rational(1) - x);
}

// f^i(x), exact.
inline Rational tent_iterate(const TentParams& p, Rational x, unsigned long i) {
    for (unsigned long j = 0; j < i; ++j) x = tent_apply(p, x);
    return x;
}

enum class RoundingMode {
    NearestBinary,  // floor(2^k x + 1/2) / 2^k
    FloorBinary,    // floor(2^k x) / 2^k
    FloorDecimal,   // floor(10^k x) / 10^k
};

struct RoundingConfig {
    RoundingMode mode = RoundingMode::NearestBinary;
    unsigned long precision = 0;  // the k above
};

inline Rational round_fixed(const Rational& x, const RoundingConfig& cfg) {
    Int base = (cfg.mode == RoundingMode::FloorDecimal) ? Int(10) : Int(2);
    Int scale = pow_int(base, cfg.precision);
    Rational t = x * Rational(scale);
    if (cfg.mode == RoundingMode::NearestBinary) t += half();
    return Rational(rational_floor(t), scale);
}

// round-to-nearest on the binary grid of step 2^-k, ties up
inline Rational round_nearest(const Rational& x, unsigned long k) {
    return round_fixed(x, {RoundingMode::NearestBinary, k});
}

}  // namespace tentcode
