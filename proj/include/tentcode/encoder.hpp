#pragma once

#include "tentcode/bitcode.hpp"
#include "tentcode/tent.hpp"

#include <vector>

namespace tentcode {

// One step of the coding recurrence: given the previous emitted bit and the
// position of the current point z relative to 1/2 (as sign(z - 1/2)), produce
// the next bit. The two rows differ in how the tie z = 1/2 resolves: both
// emit 1 there.
//   prev = 0:  bit = 0 iff z <  1/2
//   prev = 1:  bit = 1 iff z <= 1/2
inline int next_code_bit(int prev, int cmp_half) {
    if (prev == 0) return cmp_half < 0 ? 0 : 1;
    return cmp_half <= 0 ? 1 : 0;
}

// gamma^n(x): the first n bits of the tent code of x, exact. The first bit is
// 0 iff x < 1/2; afterwards next_code_bit is driven by the exact orbit of x.
BitCode encode(const TentParams& p, const Rational& x, size_t n);

// The finite expansion (mu - 1) * sum_i code[i] * mu^-i, exact.
Rational reconstruct(const TentParams& p, const BitCode& code);

// x_0 .. x_n with x_i = f^i(x).
std::vector<Rational> orbit_trace(const TentParams& p, const Rational& x, size_t n);

}  // namespace tentcode
