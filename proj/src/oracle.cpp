#include "tentcode/oracle.hpp"

#include "tentcode/encoder.hpp"

#include <algorithm>
#include <set>

namespace tentcode {
namespace {

// One propagation step: the image of the part of seg that is consistent with
// emitting `bit` next. A segment's last bit is its parity: 0 when the closed
// end is left, 1 when it is right. Children keep the rule "closed left iff
// bit 0", so only the endpoints need case analysis:
//   - straddling 1/2: both bits possible, upper end becomes f(1/2);
//     the lower end is the image of v when the bit repeats the parity
//     (the sub-segment on v's side of 1/2), of u otherwise
//   - entirely at or below 1/2: the map is increasing, only the parity bit
//     can continue the word
//   - entirely at or above 1/2: decreasing, only the flipped bit continues
std::optional<SegmentType> child_segment(const TentParams& p, const SegmentType& seg, int bit) {
    int parity = seg.closed_left ? 0 : 1;
    bool closed = (bit == 0);
    if (seg.v < half() && half() < seg.u) {
        const Rational& lower_src = (bit == parity) ? seg.v : seg.u;
        return SegmentType{tent_apply(p, lower_src), p.half_mu(), closed, std::nullopt};
    }
    if (seg.u <= half()) {
        if (bit != parity) return std::nullopt;
        return SegmentType{tent_apply(p, seg.v), tent_apply(p, seg.u), closed, std::nullopt};
    }
    // seg.v >= 1/2
    if (bit != 1 - parity) return std::nullopt;
    return SegmentType{tent_apply(p, seg.u), tent_apply(p, seg.v), closed, std::nullopt};
}

}  // namespace

std::optional<SegmentType> segment_of(const TentParams& p, const BitCode& code) {
    // The whole domain [0,1) acts as the 0-bit base segment with parity 0,
    // so the first bit needs no special case.
    SegmentType seg{Rational(0), Rational(1), true, std::nullopt};
    for (size_t i = 0; i < code.size(); ++i) {
        auto next = child_segment(p, seg, code[i]);
        if (!next) return std::nullopt;
        seg = *next;
    }
    return seg;
}

std::vector<Rational> breakpoints(const TentParams& p, size_t n) {
    if (n < 1) throw std::domain_error("breakpoints: n must be positive");
    std::set<Rational> all;
    // preimage level i: the set {x : f^i(x) = 1/2}
    std::vector<Rational> layer{half()};
    all.insert(half());
    Rational inv_mu = Rational(p.d, p.c);
    for (size_t i = 1; i < n; ++i) {
        std::vector<Rational> next;
        next.reserve(layer.size() * 2);
        for (const Rational& y : layer) {
            // the range of f is [0, mu/2]: anything above has no preimage
            if (y > p.half_mu()) continue;
            Rational a = y * inv_mu;        // rising branch, lands in (0, 1/2]
            Rational b = Rational(1) - a;   // falling branch, lands in [1/2, 1)
            next.push_back(a);
            all.insert(a);
            if (b != a) {
                next.push_back(b);
                all.insert(b);
            }
        }
        layer = std::move(next);
    }
    return std::vector<Rational>(all.begin(), all.end());
}

std::vector<PreimageInterval> enumerate_language(const TentParams& p, size_t n) {
    if (n < 1) throw std::domain_error("enumerate_language: n must be positive");
    std::vector<Rational> cuts = breakpoints(p, n);
    // Cells of [0,1) between consecutive cuts; each cell maps to one word.
    // Right continuity makes the cell's code the code of its left endpoint,
    // which we also verify against an interior point.
    std::vector<Rational> left_ends;
    left_ends.reserve(cuts.size() + 1);
    left_ends.push_back(Rational(0));
    for (const Rational& c : cuts)
        if (c > Rational(0) && c < Rational(1)) left_ends.push_back(c);

    std::vector<PreimageInterval> out;
    for (size_t i = 0; i < left_ends.size(); ++i) {
        const Rational& lo = left_ends[i];
        Rational hi = (i + 1 < left_ends.size()) ? left_ends[i + 1] : Rational(1);
        BitCode code = encode(p, lo, n);
        BitCode mid_code = encode(p, (lo + hi) * half(), n);
        if (code != mid_code)
            throw std::logic_error("enumerate_language: cell is not code-constant");
        if (!out.empty() && out.back().code == code)
            out.back().hi = hi;  // spurious cut: neighboring cells share the word
        else
            out.push_back(PreimageInterval{lo, hi, code});
    }
    return out;
}

}  // namespace tentcode
