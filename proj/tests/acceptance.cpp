// Acceptance gate: one always-on check per shipped guarantee, each reported
// as a single [PASS]/[FAIL] line. Exit status is the number of failed
// checks. No test framework: this binary is the contract.

#include "tentcode/algorithms.hpp"
#include "tentcode/automaton.hpp"
#include "tentcode/encoder.hpp"
#include "tentcode/oracle.hpp"
#include "tentcode/stats.hpp"

#include "support/chisq.hpp"

#include <chrono>
#include <cstdio>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

using namespace tentcode;

namespace {

int g_failures = 0;

struct Criterion {
    int idx;
    std::string detail;  // first failure, or extra info on pass
    bool ok = true;
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

    explicit Criterion(int i) : idx(i) {}

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }

    void finish(const std::string& title) {
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (ok) {
            std::printf("[PASS] %2d %s (%.2fs)%s%s\n", idx, title.c_str(), secs,
                        detail.empty() ? "" : " -- ", detail.c_str());
        } else {
            std::printf("[FAIL] %2d %s (%.2fs) -- %s\n", idx, title.c_str(), secs, detail.c_str());
            ++g_failures;
        }
        std::fflush(stdout);
    }
};

std::vector<BitCode> all_words(size_t n) {
    std::vector<BitCode> out;
    out.reserve(size_t{1} << n);
    for (size_t v = 0; v < (size_t{1} << n); ++v) {
        BitCode w;
        for (size_t i = n; i-- > 0;) w.push_back(int((v >> i) & 1));
        out.push_back(w);
    }
    return out;
}

// ---------------------------------------------------------------------------

void criterion_1() {
    Criterion c(1);
    TentParams p(81, 50);

    BitCode exact = encode(p, Rational(1, 2), 15);
    c.require(exact.str() == "100011011011011", "exact code of 1/2 is " + exact.str());
    c.require(is_member(p, exact).valid, "exact code flagged invalid");

    BitCode fb = naive_encode(p, Rational(1, 2), 14, {RoundingMode::FloorBinary, 8});
    c.require(fb.str() == "10001101101100", "floor-binary code is " + fb.str());
    c.require(!is_member(p, fb).valid, "floor-binary code unexpectedly valid");

    BitCode fd = naive_encode(p, Rational(1, 2), 15, {RoundingMode::FloorDecimal, 3});
    c.require(fd.str() == "100011011011010", "floor-decimal code is " + fd.str());
    c.require(!is_member(p, fd).valid, "floor-decimal code unexpectedly valid");

    c.finish("critical-point code exact; both coarsely rounded codes leave the language");
}

void criterion_2() {
    Criterion c(2);
    for (auto& p : {TentParams(8, 5), TentParams(81, 50), TentParams(3, 2), TentParams(7, 4)}) {
        AutomatonTable t(p, 16);
        for (size_t n = 1; n <= 12 && c.ok; ++n) {
            std::set<std::string> language;
            for (const auto& cell : enumerate_language(p, n)) language.insert(cell.code.str());
            for (const BitCode& w : all_words(n)) {
                bool by_machine = is_member(t, w).valid;
                bool by_segment = segment_of(p, w).has_value();
                bool by_listing = language.count(w.str()) > 0;
                if (by_machine != by_segment || by_segment != by_listing) {
                    c.require(false, "mu=" + p.str() + " word=" + w.str() + " machine/segment/listing = " +
                                         std::to_string(by_machine) + "/" + std::to_string(by_segment) +
                                         "/" + std::to_string(by_listing));
                    break;
                }
            }
        }
    }
    c.finish("membership agrees across machine, segment propagation, and full enumeration (n<=12)");
}

void criterion_3() {
    Criterion c(3);
    TentParams p(8, 5);
    AutomatonTable t(p, 6);

    // expected diagram: states (side, level) with side 0 = chain run I,
    // side 1 = mirrored run Ib; edges carry the consumed bit
    struct Edge {
        int side, level, bit, to_side, to_level;
        bool operator<(const Edge& o) const {
            return std::tie(side, level, bit, to_side, to_level) <
                   std::tie(o.side, o.level, o.bit, o.to_side, o.to_level);
        }
        bool operator==(const Edge& o) const = default;
    };
    std::set<Edge> expected = {
        {0, 0, 1, 0, 1}, {0, 0, 0, 1, 1},                    // start fans out by the first bit
        {0, 1, 0, 0, 2}, {0, 1, 1, 0, 1},                    // chain 0, loop 1
        {1, 1, 1, 1, 2}, {1, 1, 0, 1, 1},
        {0, 2, 0, 0, 3}, {0, 2, 1, 1, 2},                    // back I2 -> Ib2
        {1, 2, 1, 1, 3}, {1, 2, 0, 0, 2},
        {0, 3, 1, 0, 4},                                     // chain 1; bit 0 rejects
        {1, 3, 0, 1, 4},
        {0, 4, 0, 0, 5}, {0, 4, 1, 1, 3},                    // back I4 -> Ib3
        {1, 4, 1, 1, 5}, {1, 4, 0, 0, 3},
        {0, 5, 0, 0, 6}, {0, 5, 1, 1, 2},                    // back I5 -> Ib2
        {1, 5, 1, 1, 6}, {1, 5, 0, 0, 2},
    };
    std::set<Edge> rejects = {{0, 3, 0, -1, -1}, {1, 3, 1, -1, -1}};

    std::set<Edge> live, dead;
    for (int l = 0; l <= 5; ++l) {
        for (int side : {0, 1}) {
            if (l == 0 && side == 1) continue;
            // reconstruct the stored bit of this state from its side
            MachineState s{l, l == 0 ? 0 : (side == 0 ? t.c(l) : 1 - t.c(l))};
            for (int bit : {0, 1}) {
                auto r = try_step(t, s, bit);
                if (!r) continue;
                if (r->l < 0) {
                    dead.insert({side, l, bit, -1, -1});
                } else {
                    int to_side = (r->b == t.c(r->l)) ? 0 : 1;
                    live.insert({side, l, bit, to_side, r->l});
                }
            }
        }
    }
    c.require(live == expected, "live transition set differs from the reference diagram");
    c.require(dead == rejects, "reject transition set differs from the reference diagram");
    c.require(t.c(1) == 1 && t.c(2) == 0 && t.c(3) == 0 && t.c(4) == 1 && t.c(5) == 0 && t.c(6) == 0,
              "chain labels differ from 100100");
    c.finish("depth-6 machine for 8/5 matches the reference diagram edge for edge");
}

void criterion_4() {
    Criterion c(4);
    size_t n = 64;
    for (auto& p : {TentParams(8, 5), TentParams(81, 50)}) {
        AutomatonTable t(p, 64);
        for (const Rational& e : {Rational(1, 32), Rational(1, 64)}) {
            auto eps = EpsilonConfig::make(p, e);
            for (int i = 0; i < 64 && c.ok; ++i) {
                Rational x(48 + 13 * i, 1024);  // dyadic grid over (0,1), eps-interior
                EncodeResult r = valid_encode(p, x, n, eps);
                BitCode lo = encode(p, x - e, n), hi = encode(p, x + e, n);
                if (!is_member(t, r.code).valid)
                    c.require(false, "mu=" + p.str() + " x=" + x.str() + " output invalid");
                else if (lex_compare(lo, r.code) > 0 || lex_compare(r.code, hi) > 0)
                    c.require(false, "mu=" + p.str() + " x=" + x.str() + " eps=" + e.str() +
                                         " output escapes the sandwich");
            }
        }
    }
    c.finish("valid-encode output is in-language and sandwiched by the edge codes (n=64)");
}

void criterion_5() {
    Criterion c(5);
    TentParams p(8, 5);
    size_t n = 10;
    Rational e(1, 32);
    auto eps = EpsilonConfig::make(p, e);
    auto cells = enumerate_language(p, n);
    auto words = all_words(n);

    for (int i = 0; i < 16 && c.ok; ++i) {
        Rational x(2 * i + 1, 32);
        Rational alo = x - e, ahi = x + e;          // must-accept window
        Rational rlo = x - e * 2, rhi = x + e * 2;  // must-reject outside this
        std::set<std::string> accept_set, tolerated;
        for (const auto& cell : cells) {
            if (cell.lo <= ahi && alo < cell.hi) accept_set.insert(cell.code.str());
            if (cell.lo <= rhi && rlo < cell.hi) tolerated.insert(cell.code.str());
        }
        for (const BitCode& w : words) {
            bool got = decide(p, w, x, eps).accept;
            if (accept_set.count(w.str()) && !got) {
                c.require(false, "x=" + x.str() + " word=" + w.str() + " within eps but rejected");
                break;
            }
            if (!tolerated.count(w.str()) && got) {
                c.require(false, "x=" + x.str() + " word=" + w.str() + " outside 2*eps but accepted");
                break;
            }
        }
    }
    c.finish("decide accepts all of L_n(x,eps), rejects all outside L_n(x,2eps) (n=10, 16 centers)");
}

void criterion_6() {
    Criterion c(6);
    for (auto& p : {TentParams(8, 5), TentParams(81, 50)}) {
        AutomatonTable t(p, 50);
        for (int k = 2; k <= 50; ++k) {
            Rational len = t.u(k) - t.v(k);
            if (!(len * Rational(Int(2 * pow_int(p.d, k))) >= Rational(1))) {
                c.require(false, "mu=" + p.str() + " level " + std::to_string(k) + " too short");
                break;
            }
        }
    }
    c.finish("segment lengths stay above 1/(2 d^k) through level 50");
}

void criterion_7() {
    Criterion c(7);
    TentParams p(8, 5);
    AutomatonTable t(p, 200);
    int loops = 0, backs = 0, chains = 0;
    std::vector<char> has_back(200, 0);

    for (int k = 1; k < 200; ++k) {
        for (int idx : {0, 1}) {
            EdgeClass e = classify_edge(t, k, idx);
            int to = t.delta(k, idx);
            switch (e) {
                case EdgeClass::Chain: ++chains; break;
                case EdgeClass::Reject: break;
                case EdgeClass::Level1Loop: ++loops; break;
                case EdgeClass::Back:
                    ++backs;
                    if (!(to <= k / 2 + 1))
                        c.require(false, "back edge " + std::to_string(k) + "->" + std::to_string(to) +
                                             " lands past k/2+1");
                    has_back[k] = 1;
                    break;
                case EdgeClass::Violation:
                    c.require(false, "transition " + std::to_string(k) + "/bit" + std::to_string(idx) +
                                         " fits no structural class");
                    break;
            }
        }
    }
    c.require(loops == 1, "expected exactly one level-1 self-loop");
    for (int m = 1; 2 * m < 200 && c.ok; ++m) {
        bool found = false;
        for (int j = m + 1; j <= 2 * m; ++j) found = found || has_back[j];
        c.require(found, "window {" + std::to_string(m + 1) + ".." + std::to_string(2 * m) +
                             "} has no back edge");
    }
    if (c.ok)
        c.detail = std::to_string(chains) + " chain / " + std::to_string(backs) +
                   " back edges; the level-1 self-loop (fixed point at 0) counted separately";
    c.finish("every transition to level 200 is chain, back (target <= k/2+1), or reject");
}

void criterion_8() {
    Criterion c(8);
    TentParams p(8, 5);
    unsigned long a = ceil_log_mu(p, Rational(Int(p.d)));
    std::string witnesses;
    for (unsigned long lgn : {8ul, 10ul, 12ul}) {
        Int n = pow2_int(lgn);
        unsigned long bound = 8 * a * ceil_log_mu(p, Rational(n));
        AutomatonTable t(p, int(2 * bound));
        Int n3 = n * n * n;
        long witness = -1;
        for (unsigned long l = 1; l <= bound; ++l) {
            // |I_2l| * n^3 * d^l <= c^l * |I_l|, all exact
            Rational lhs = (t.u(int(2 * l)) - t.v(int(2 * l))) * Rational(Int(n3 * pow_int(p.d, l)));
            Rational rhs = (t.u(int(l)) - t.v(int(l))) * Rational(pow_int(p.c, l));
            if (lhs <= rhs) {
                witness = long(l);
                break;
            }
        }
        if (witness < 0) {
            c.require(false, "n=2^" + std::to_string(lgn) + ": no witness level up to " +
                                 std::to_string(bound));
        } else {
            if (!witnesses.empty()) witnesses += ", ";
            witnesses += "n=2^" + std::to_string(lgn) + ": l=" + std::to_string(witness) +
                         " of " + std::to_string(bound);
        }
    }
    if (c.ok) c.detail = witnesses;
    c.finish("a doubled level contracts below n^-3 within the claimed bound");
}

void criterion_9() {
    Criterion c(9);
    TentParams p(8, 5);
    size_t n = 8;
    const long samples = 100000;
    auto cells = enumerate_language(p, n);

    AutomatonTable t(p, 32);
    TrialRng rng(20240819, 0);
    std::map<std::string, long> observed;
    for (long i = 0; i < samples; ++i) observed[sample_dn(t, n, rng).str()]++;

    double chi2 = 0;
    bool unknown_word = false;
    long seen = 0;
    for (const auto& [w, cnt] : observed) {
        seen += cnt;
        bool found = false;
        for (const auto& cell : cells) found = found || cell.code.str() == w;
        unknown_word = unknown_word || !found;
    }
    c.require(!unknown_word, "sampler produced a word outside the language");
    c.require(seen == samples, "sample count mismatch");
    for (const auto& cell : cells) {
        double expect = double(samples) * (cell.hi - cell.lo).to_double();
        double obs = double(observed[cell.code.str()]);
        chi2 += (obs - expect) * (obs - expect) / expect;
    }
    double pval = testsupport::chi_square_upper_tail(chi2, double(cells.size() - 1));
    c.require(pval > 0.001, "chi-square p = " + std::to_string(pval));
    if (c.ok) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "%zu words, chi2 = %.1f, p = %.3f", cells.size(), chi2, pval);
        c.detail = buf;
    }
    c.finish("sampled word frequencies match the exact cell lengths (1e5 draws)");
}

void criterion_10() {
    Criterion c(10);
    TentParams p(8, 5);
    const unsigned long lgs[] = {8, 10, 12, 14};
    long long sums[4] = {0, 0, 0, 0};  // sum of K^2 at each n, 500 trials each
    std::string summary;

    for (int i = 0; i < 4; ++i) {
        ExperimentConfig cfg{p, Rational(1, 5), Rational(1, 64), size_t{1} << lgs[i], 500, 6021, 0};
        KSummary s = smoothed_experiment(cfg);
        sums[i] = s.sum_k_sq;
        char buf[64];
        std::snprintf(buf, sizeof buf, "%sn=2^%lu: EK2=%.1f", i ? ", " : "", lgs[i], s.mean_k_sq());
        summary += buf;
    }

    for (int i = 0; i + 1 < 4; ++i) {
        // mean K^2 non-decreasing in n
        c.require(sums[i] <= sums[i + 1],
                  "mean K^2 drops between n=2^" + std::to_string(lgs[i]) + " and 2^" +
                      std::to_string(lgs[i + 1]));
        // mean K^2 / n strictly decreasing: sums[i+1] * n_i < sums[i] * n_{i+1}
        c.require(sums[i + 1] * (1LL << lgs[i]) < sums[i] * (1LL << lgs[i + 1]),
                  "mean K^2 grows at least linearly past n=2^" + std::to_string(lgs[i]));
    }
    // mean K^2 / lg^2 n spread under 4x, cross-multiplied exactly
    for (int i = 0; i < 4 && c.ok; ++i) {
        for (int j = 0; j < 4; ++j) {
            long long li = (long long)(lgs[i] * lgs[i]), lj = (long long)(lgs[j] * lgs[j]);
            if (sums[i] * lj >= 4 * sums[j] * li) {
                c.require(false, "K^2/lg^2 n spread reaches 4x between n=2^" +
                                     std::to_string(lgs[j]) + " and 2^" + std::to_string(lgs[i]));
                break;
            }
        }
    }
    if (c.ok) c.detail = summary;
    c.finish("smoothed K^2 scales sublinearly, tracking lg^2 n within 4x (500 trials/size)");
}

void criterion_11() {
    Criterion c(11);
    size_t n = 40;
    TrialRng rng(99, 0);
    for (auto& p : {TentParams(8, 5), TentParams(81, 50)}) {
        Rational tol(pow_int(p.d, n), pow_int(p.c, n));  // mu^-n
        for (int i = 0; i < 1000 && c.ok; ++i) {
            Rational x(rng.below(pow2_int(48)), pow2_int(48));
            Rational err = reconstruct(p, encode(p, x, n)) - x;
            if (err < Rational(0)) err = -err;
            if (!(err <= tol)) c.require(false, "mu=" + p.str() + " x=" + x.str() + " misses the bound");
        }
    }
    c.finish("finite expansion inverts the code within mu^-40 (1000 random dyadic points each)");
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();

    if (g_failures == 0)
        std::printf("all 11 acceptance checks passed\n");
    else
        std::printf("%d acceptance check(s) FAILED\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
