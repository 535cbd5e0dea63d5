#include "tentcode/algorithms.hpp"

#include "tentcode/encoder.hpp"

#include <algorithm>

namespace tentcode {

EpsilonConfig EpsilonConfig::make(const TentParams& p, const Rational& eps) {
    if (eps <= Rational(0) || eps >= Rational(1, 4))
        throw std::domain_error("epsilon must satisfy 0 < eps < 1/4");
    // smallest kappa with (c/d)^kappa >= (q/p)^3 for eps = p/q
    Int lhs = pow_int(eps.num(), 3);  // scaled by c^kappa as we go
    Int rhs = pow_int(eps.den(), 3);  // scaled by d^kappa
    unsigned long kappa = 0;
    while (lhs < rhs) {
        lhs *= p.c;
        rhs *= p.d;
        ++kappa;
    }
    return EpsilonConfig{eps, kappa};
}

BitCode naive_encode(const TentParams& p, const Rational& x, size_t n, const RoundingConfig& cfg) {
    if (x < Rational(0) || x > Rational(1)) throw std::domain_error("naive_encode: x must be in [0, 1]");
    BitCode out;
    out.reserve(n);
    Rational z = round_fixed(x, cfg);
    int prev = 0;
    for (size_t i = 0; i < n; ++i) {
        int b = next_code_bit(prev, cmp3(z, half()));
        out.push_back(b);
        prev = b;
        if (i + 1 < n) z = round_fixed(tent_apply(p, z), cfg);
    }
    return out;
}

namespace {

EncodeResult valid_encode_run(const TentParams& p, Rational z, size_t n, const EpsilonConfig& eps) {
    AutomatonTable table(p, static_cast<int>(2 * eps.kappa));
    BitCode out;
    out.reserve(n);
    SpaceReport space;
    space.max_rational_bits = z.bit_size();
    MachineState s;

    size_t rounded_steps = std::min<size_t>(n, eps.kappa);
    for (size_t i = 0; i < rounded_steps; ++i) {
        int b = next_code_bit(s.b, cmp3(z, half()));
        out.push_back(b);
        s = step(table, s, b);
        if (s.l < 0)
            throw std::logic_error("valid_encode: rounded orbit left the language");
        space.max_level = std::max(space.max_level, s.l);
        if (i + 1 < rounded_steps) {
            z = round_nearest(tent_apply(p, z), eps.kappa);
            space.max_rational_bits = std::max(space.max_rational_bits, z.bit_size());
        }
    }

    for (size_t i = rounded_steps; i < n; ++i) {
        // Move to the smallest live level; ties (impossible under the level
        // structure, but defensively) prefer table bit 0.
        if (!table.delta_known(s.l))
            throw std::logic_error("valid_encode: walk left the prebuilt table");
        int d0 = table.delta(s.l, 0);
        int d1 = table.delta(s.l, 1);
        int pick;
        if (d0 > 0 && (d1 <= 0 || d0 <= d1))
            pick = 0;
        else if (d1 > 0)
            pick = 1;
        else
            throw std::logic_error("valid_encode: no live transition at level " + std::to_string(s.l));
        int b = (s.b == table.c(s.l)) ? pick : 1 - pick;
        out.push_back(b);
        s = step(table, s, b);
        space.max_level = std::max(space.max_level, s.l);
    }

    space.table_levels = table.total_entries();
    space.max_rational_bits = std::max(space.max_rational_bits, table.max_endpoint_bits());
    return EncodeResult{std::move(out), space};
}

}  // namespace

EncodeResult valid_encode(const TentParams& p, const Rational& x, size_t n, const EpsilonConfig& eps) {
    if (x < Rational(0) || x >= Rational(1)) throw std::domain_error("valid_encode: x must be in [0, 1)");
    return valid_encode_run(p, round_nearest(x, eps.kappa), n, eps);
}

EncodeResult valid_encode(const TentParams& p, DigitStream& x, size_t n, const EpsilonConfig& eps) {
    Rational z = stream_round_nearest(x, eps.kappa);
    EncodeResult r = valid_encode_run(p, z, n, eps);
    r.space.stream_bits_read = static_cast<long>(x.bits_read());
    return r;
}

namespace {

DecideResult decide_run(const TentParams& p, const BitCode& code, const Rational& x_hat,
                        const EpsilonConfig& eps) {
    AutomatonTable table(p, static_cast<int>(eps.kappa));
    const unsigned long kappa = eps.kappa;
    const Rational grid_top = Rational(1) - Rational(Int(1), pow2_int(kappa));
    const Rational spread = Rational(3, 2) * eps.epsilon;

    auto clamp = [&](Rational z) {
        if (z < Rational(0)) return Rational(0);
        if (z > grid_top) return grid_top;
        return z;
    };

    DecisionState st;
    st.z_minus = clamp(round_nearest(x_hat - spread, kappa));
    st.z_plus = clamp(round_nearest(x_hat + spread, kappa));

    SpaceReport space;
    space.max_rational_bits =
        std::max(st.z_minus.bit_size(), st.z_plus.bit_size());

    auto finish = [&](bool accept) {
        space.table_levels = table.total_entries();
        space.max_rational_bits = std::max(space.max_rational_bits, table.max_endpoint_bits());
        return DecideResult{accept, space};
    };

    int prev = 0;  // parity carrier: the previous input bit
    for (size_t i = 0; i < code.size(); ++i) {
        int bi = code[i];
        switch (st.case_tag) {
            case 1: {
                int bm = next_code_bit(prev, cmp3(st.z_minus, half()));
                int bp = next_code_bit(prev, cmp3(st.z_plus, half()));
                if (bi < bm || bp < bi) return finish(false);
                bool keep_minus = (bi == bm);
                bool keep_plus = (bi == bp);
                if (keep_minus) st.z_minus = round_nearest(tent_apply(p, st.z_minus), kappa);
                if (keep_plus) st.z_plus = round_nearest(tent_apply(p, st.z_plus), kappa);
                if (!keep_minus)
                    st.case_tag = 2;  // input strictly passed the lower boundary
                else if (!keep_plus)
                    st.case_tag = 3;  // input strictly passed the upper boundary
                break;
            }
            case 2: {
                int bp = next_code_bit(prev, cmp3(st.z_plus, half()));
                if (bp < bi) return finish(false);
                if (bi < bp)
                    st.case_tag = 0;
                else
                    st.z_plus = round_nearest(tent_apply(p, st.z_plus), kappa);
                break;
            }
            case 3: {
                int bm = next_code_bit(prev, cmp3(st.z_minus, half()));
                if (bi < bm) return finish(false);
                if (bm < bi)
                    st.case_tag = 0;
                else
                    st.z_minus = round_nearest(tent_apply(p, st.z_minus), kappa);
                break;
            }
            default:
                break;  // strictly inside: only the machine can reject now
        }
        st.machine = step(table, st.machine, bi);
        if (st.machine.l < 0) return finish(false);
        space.max_level = std::max(space.max_level, st.machine.l);
        prev = bi;
    }
    return finish(true);
}

}  // namespace

DecideResult decide(const TentParams& p, const BitCode& code, const Rational& x, const EpsilonConfig& eps) {
    if (x < Rational(0) || x >= Rational(1)) throw std::domain_error("decide: x must be in [0, 1)");
    return decide_run(p, code, x, eps);
}

DecideResult decide(const TentParams& p, const BitCode& code, DigitStream& x, const EpsilonConfig& eps) {
    Rational x_hat = read_stream_prefix(x, eps.kappa + 2);
    DecideResult r = decide_run(p, code, x_hat, eps);
    r.space.stream_bits_read = static_cast<long>(x.bits_read());
    return r;
}

}  // namespace tentcode
