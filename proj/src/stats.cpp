#include "tentcode/stats.hpp"

#include "tentcode/encoder.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace tentcode {

namespace {

inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

TrialRng::TrialRng(uint64_t seed, uint64_t stream) {
    // decorrelate (seed, stream) pairs by running the mix a few times
    state_ = seed;
    uint64_t s = splitmix64(state_);
    state_ ^= stream * 0xda942042e4dd58b5ULL;
    state_ ^= s;
    (void)splitmix64(state_);
}

uint64_t TrialRng::next_u64() { return splitmix64(state_); }

Int TrialRng::below(const Int& bound) {
    if (bound <= 0) throw std::domain_error("TrialRng::below: bound must be positive");
    size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
    size_t words = (bits + 63) / 64;
    for (;;) {
        Int r = 0;
        for (size_t w = 0; w < words; ++w) {
            uint64_t x = next_u64();
            Int chunk(static_cast<unsigned long>(x >> 32));
            chunk <<= 32;
            chunk += static_cast<unsigned long>(x & 0xffffffffULL);
            r <<= 64;
            r += chunk;
        }
        // keep only `bits` low bits so the rejection rate stays below 1/2
        Int mask = pow2_int(static_cast<unsigned long>(bits)) - 1;
        r &= mask;
        if (r < bound) return r;
    }
}

int TrialRng::bernoulli(const Rational& prob) {
    if (prob <= Rational(0)) return 0;
    if (prob >= Rational(1)) return 1;
    return below(prob.den()) < prob.num() ? 1 : 0;
}

BitCode sample_dn(AutomatonTable& t, size_t n, TrialRng& rng) {
    if (n < 1) throw std::domain_error("sample_dn: n must be positive");
    BitCode out;
    out.reserve(n);
    MachineState s;
    for (size_t i = 0; i < n; ++i) {
        t.ensure_level(s.l);  // endpoints of the current level must exist
        const Rational& v = t.v(s.l);
        const Rational& u = t.u(s.l);
        int parity = s.b;
        int b;
        if (v < half() && half() < u) {
            // both children live; the one on the closed end's side of 1/2
            // repeats the parity bit and has length proportional to 1/2 - v
            // (resp. u - 1/2 for the flip)
            Rational p_repeat = (half() - v) / (u - v);
            b = rng.bernoulli(p_repeat) ? parity : 1 - parity;
        } else if (u <= half()) {
            b = parity;
        } else {
            b = 1 - parity;
        }
        out.push_back(b);
        s = step(t, s, b);
        if (s.l < 0) throw std::logic_error("sample_dn: walked out of the language");
    }
    return out;
}

BitCode sample_dn(const TentParams& p, size_t n, TrialRng& rng) {
    AutomatonTable t(p);
    return sample_dn(t, n, rng);
}

namespace {

unsigned long ceil_lg_inverse(const Rational& eps) {
    // smallest t with 2^t >= 1/eps
    Int lhs = eps.num();
    unsigned long t = 0;
    while (lhs < eps.den()) {
        lhs <<= 1;
        ++t;
    }
    return t;
}

}  // namespace

Rational draw_perturbed_point(const ExperimentConfig& cfg, TrialRng& rng) {
    if (cfg.epsilon <= Rational(0) || cfg.epsilon >= Rational(1, 4))
        throw std::domain_error("perturbed sampling: need 0 < eps < 1/4");
    Rational lo = cfg.x - cfg.epsilon;
    if (lo < Rational(0)) lo = Rational(0);
    Rational hi = cfg.x + cfg.epsilon;
    if (hi > Rational(1)) hi = Rational(1);
    if (!(lo < hi)) throw std::domain_error("perturbed sampling: empty interval");
    unsigned long m = 2 * cfg.n + ceil_lg_inverse(cfg.epsilon);
    Int scale = pow2_int(m);
    Int count = rational_floor((hi - lo) * Rational(scale));
    if (count < 1) count = 1;
    return lo + Rational(rng.below(count), scale);
}

BitCode sample_perturbed(const ExperimentConfig& cfg, TrialRng& rng) {
    return encode(cfg.params, draw_perturbed_point(cfg, rng), cfg.n);
}

KSummary smoothed_experiment(const ExperimentConfig& cfg, std::vector<int>* per_trial) {
    if (cfg.trials < 1) throw std::domain_error("smoothed_experiment: trials must be positive");
    AutomatonTable table(cfg.params);
    std::vector<int> ks(cfg.trials, 0);

    int workers = cfg.workers;
    if (workers <= 0) {
        unsigned hw = std::thread::hardware_concurrency();
        workers = static_cast<int>(std::clamp(hw, 1u, 8u));
    }
    workers = static_cast<int>(std::min<size_t>(workers, cfg.trials));

    std::atomic<size_t> next_trial{0};
    auto body = [&]() {
        for (;;) {
            size_t trial = next_trial.fetch_add(1);
            if (trial >= cfg.trials) return;
            TrialRng rng(cfg.seed, trial);
            BitCode code = sample_perturbed(cfg, rng);
            ks[trial] = k_statistic(table, code);
        }
    };

    if (workers == 1) {
        body();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) pool.emplace_back(body);
        for (auto& th : pool) th.join();
    }

    KSummary sum;
    sum.trials = cfg.trials;
    sum.n = cfg.n;
    for (int k : ks) {
        sum.sum_k += k;
        sum.sum_k_sq += static_cast<long long>(k) * k;
        sum.max_k = std::max(sum.max_k, k);
        ++sum.histogram[k];
    }
    if (per_trial) *per_trial = std::move(ks);
    return sum;
}

unsigned long ceil_log_mu(const TentParams& p, const Rational& value) {
    if (value < Rational(1)) throw std::domain_error("ceil_log_mu: value must be >= 1");
    // smallest a with c^a * den >= d^a * num
    Int lhs = value.den();
    Int rhs = value.num();
    unsigned long a = 0;
    while (lhs < rhs) {
        lhs *= p.c;
        rhs *= p.d;
        ++a;
    }
    return a;
}

LevelBoundsReport verify_level_bounds(const TentParams& p, size_t n) {
    LevelBoundsReport rep;
    rep.n = n;
    unsigned long log_d = ceil_log_mu(p, Rational(p.d));
    unsigned long log_n = ceil_log_mu(p, Rational(Int(n)));
    rep.level_bound = static_cast<int>(8 * log_d * log_n);
    rep.checked_levels = 2 * rep.level_bound;

    AutomatonTable t(p);
    try {
        t.ensure_level(rep.checked_levels);
        rep.hypotheses_ok = true;
    } catch (const periodic_kneading_error&) {
        rep.hypotheses_ok = false;
        rep.note = "kneading orbit hit 1/2; level-structure hypotheses violated";
        return rep;
    }
    rep.closure_level = t.closure_level();
    if (t.max_level() < rep.checked_levels) {
        // closure cut the table short; check what exists
        rep.checked_levels = t.max_level();
    }

    auto seg_len = [&](int k) { return t.u(k) - t.v(k); };

    // (a) witness level for the length-collapse ratio |I_2l| / (mu^l |I_l|) <= n^-3
    Rational n3 = Rational(Int(1), pow_int(Int(n), 3));
    for (int l = 1; 2 * l <= rep.checked_levels; ++l) {
        Rational ratio = seg_len(2 * l) * Rational(pow_int(p.d, l), pow_int(p.c, l)) / seg_len(l);
        if (ratio <= n3) {
            rep.witness_level = l;
            break;
        }
    }
    rep.witness_within_bound = rep.witness_level && *rep.witness_level <= rep.level_bound;

    // (b) minimum segment length |I_k| >= 1/(2 d^k)
    rep.min_length_ok = true;
    for (int k = 2; k <= rep.checked_levels; ++k) {
        if (seg_len(k) * Rational(Int(2 * pow_int(p.d, k))) < Rational(1)) {
            rep.min_length_ok = false;
            break;
        }
    }

    // (c) edge structure: chain / back / reject everywhere, the level-1
    // self-loop being the lone structural exception
    rep.edge_structure_ok = true;
    bool saw_loop1 = false;
    std::vector<char> has_back(rep.checked_levels + 1, 0);
    rep.in_edge_form_ok = true;
    for (int k = 1; t.delta_known(k); ++k) {
        for (int idx = 0; idx < 2; ++idx) {
            switch (classify_edge(t, k, idx)) {
                case EdgeClass::Chain:
                case EdgeClass::Reject:
                    break;
                case EdgeClass::Level1Loop:
                    saw_loop1 = true;
                    break;
                case EdgeClass::Back: {
                    has_back[k] = 1;
                    int target = t.delta(k, idx);
                    if (k < 2 * (target - 1)) rep.in_edge_form_ok = false;
                    break;
                }
                case EdgeClass::Violation:
                    rep.edge_structure_ok = false;
                    break;
            }
        }
        if (k + 1 > rep.checked_levels) break;
    }
    if (saw_loop1)
        rep.note = "level-1 self-loop present (fixed point of the map at v=0), counted separately";

    // (d) every window {m+1..2m} inside the checked range has a back edge;
    // the level-1 self-loop plays that role for m = 1 (it is the only
    // level-preserving transition and bounds the walk exactly the same way)
    rep.back_windows_ok = true;
    for (int m = 1; 2 * m < rep.checked_levels; ++m) {
        bool found = false;
        for (int k = m + 1; k <= 2 * m && !found; ++k)
            if (has_back[k]) found = true;
        if (m == 1 && !found && saw_loop1) found = true;
        if (!found) {
            rep.back_windows_ok = false;
            break;
        }
    }

    return rep;
}

}  // namespace tentcode
