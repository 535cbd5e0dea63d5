#pragma once

#include "tentcode/bitcode.hpp"
#include "tentcode/tent.hpp"

#include <optional>
#include <vector>

namespace tentcode {

// The set of n-th iterates sharing a code prefix: a half-open interval whose
// closed end sits left iff the last bit of the prefix is 0. level is the
// chain depth when known (set by the automaton; the oracle leaves it empty).
struct SegmentType {
    Rational v;  // infimum
    Rational u;  // supremum
    bool closed_left = true;  // true: [v,u)   false: (v,u]
    std::optional<int> level;

    friend bool operator==(const SegmentType& a, const SegmentType& b) {
        return a.v == b.v && a.u == b.u && a.closed_left == b.closed_left;
    }
};

// The set of starting points x whose code equals a given word: [lo, hi).
struct PreimageInterval {
    Rational lo;
    Rational hi;
    BitCode code;
};

// Propagates T(b_1...b_n) forward one bit at a time by the image case split
// (interval straddles 1/2 / lies at or below / lies at or above). Returns
// nullopt exactly when the word is inconsistent.
std::optional<SegmentType> segment_of(const TentParams& p, const BitCode& code);

// All x in [0,1) with f^i(x) = 1/2 for some 0 <= i < n: the discontinuity
// candidates of the n-bit code map, via iterated exact preimages of 1/2.
std::vector<Rational> breakpoints(const TentParams& p, size_t n);

// The full n-bit language with the exact preimage interval of every word,
// in lexicographic (equivalently, left-to-right) order.
std::vector<PreimageInterval> enumerate_language(const TentParams& p, size_t n);

}  // namespace tentcode
