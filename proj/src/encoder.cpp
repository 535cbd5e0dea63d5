#include "tentcode/encoder.hpp"

namespace tentcode {

BitCode encode(const TentParams& p, const Rational& x, size_t n) {
    if (x < Rational(0) || x >= Rational(1)) throw std::domain_error("encode: x must be in [0, 1)");
    BitCode out;
    out.reserve(n);
    // Track the orbit as a raw numerator over the implicit denominator
    // den(x) * d^i instead of canonical rationals. One gcd-free word
    // multiplication per step keeps long orbits (n ~ 2^14) cheap; the values
    // are identical to exact iteration of f.
    Int N = x.num();
    Int D = x.den();
    int prev = 0;
    for (size_t i = 0; i < n; ++i) {
        int cmp_half = cmp(2 * N, D);
        int b = next_code_bit(prev, cmp_half);
        out.push_back(b);
        prev = b;
        if (i + 1 < n) {
            if (cmp_half <= 0)
                N *= p.c;            // f(z) = mu z
            else
                N = p.c * (D - N);   // f(z) = mu (1 - z)
            D *= p.d;
        }
    }
    return out;
}

Rational reconstruct(const TentParams& p, const BitCode& code) {
    // Horner evaluation of sum_i b_i mu^-i from the last bit inward.
    Rational mu = p.mu();
    Rational s(0);
    for (size_t i = code.size(); i-- > 0;) s = (s + Rational(code[i])) / mu;
    return (mu - Rational(1)) * s;
}

std::vector<Rational> orbit_trace(const TentParams& p, const Rational& x, size_t n) {
    if (x < Rational(0) || x >= Rational(1)) throw std::domain_error("orbit_trace: x must be in [0, 1)");
    std::vector<Rational> orbit;
    orbit.reserve(n + 1);
    orbit.push_back(x);
    for (size_t i = 0; i < n; ++i) orbit.push_back(tent_apply(p, orbit.back()));
    return orbit;
}

}  // namespace tentcode
