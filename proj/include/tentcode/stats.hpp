#pragma once

#include "tentcode/automaton.hpp"
#include "tentcode/bitcode.hpp"
#include "tentcode/tent.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tentcode {

// Deterministic per-trial random source: a splitmix64 stream keyed by
// (seed, stream index), with exact helpers for bignum ranges and rational
// Bernoulli draws. Cheap to construct, so every trial owns one and results
// are independent of scheduling.
class TrialRng {
public:
    explicit TrialRng(uint64_t seed, uint64_t stream = 0);

    uint64_t next_u64();

    // uniform integer in [0, bound), bound >= 1, by rejection on raw bits
    Int below(const Int& bound);

    // 1 with probability prob (0 <= prob <= 1), exactly
    int bernoulli(const Rational& prob);

private:
    uint64_t state_;
};

struct ExperimentConfig {
    TentParams params;
    Rational x;
    Rational epsilon;
    size_t n = 1;
    size_t trials = 1;
    uint64_t seed = 0;
    int workers = 0;  // 0 = one per hardware thread (capped)
};

struct KSummary {
    size_t trials = 0;
    size_t n = 0;
    long long sum_k = 0;      // exact aggregates; the means are derived views
    long long sum_k_sq = 0;
    int max_k = 0;
    std::map<int, long> histogram;

    double mean_k() const { return trials ? double(sum_k) / double(trials) : 0.0; }
    double mean_k_sq() const { return trials ? double(sum_k_sq) / double(trials) : 0.0; }
};

// One word of the stationary length-n code distribution: walk the table and
// emit each bit with probability proportional to its child segment length.
BitCode sample_dn(AutomatonTable& t, size_t n, TrialRng& rng);
BitCode sample_dn(const TentParams& p, size_t n, TrialRng& rng);

// Uniform dyadic point of [x-eps, x+eps] clipped to [0,1), at resolution
// 2n + ceil(lg 1/eps) bits.
Rational draw_perturbed_point(const ExperimentConfig& cfg, TrialRng& rng);

// Code of a uniformly perturbed point.
BitCode sample_perturbed(const ExperimentConfig& cfg, TrialRng& rng);

// The smoothed-space experiment: per trial, encode a perturbed point and
// record the max automaton level its code reaches. Deterministic for a fixed
// seed regardless of worker count. per_trial, when given, receives K of each
// trial in trial order.
KSummary smoothed_experiment(const ExperimentConfig& cfg, std::vector<int>* per_trial = nullptr);

// Numeric verification of the level-structure facts the space bound rests
// on, over a table built to twice the claimed witness bound.
struct LevelBoundsReport {
    size_t n = 0;
    int level_bound = 0;               // 8 ceil(log_mu d) ceil(log_mu n)
    int checked_levels = 0;            // table built through 2 * level_bound
    std::optional<int> witness_level;  // smallest l with |I_2l| <= n^-3 mu^l |I_l|
    bool witness_within_bound = false;
    bool min_length_ok = false;        // |I_k| >= 1/(2 d^k) for 2 <= k <= checked_levels
    bool edge_structure_ok = false;    // every transition chain/back/reject (level-1 loop aside)
    bool back_windows_ok = false;      // every window {m+1..2m} contains a back edge
    bool in_edge_form_ok = false;      // non-chain in-edges to level t come from level >= 2(t-1)
    bool hypotheses_ok = false;        // kneading orbit never hit 1/2 while building
    std::optional<int> closure_level;
    std::string note;

    bool all_ok() const {
        return witness_within_bound && min_length_ok && edge_structure_ok && back_windows_ok &&
               in_edge_form_ok && hypotheses_ok;
    }
};

LevelBoundsReport verify_level_bounds(const TentParams& p, size_t n);

// smallest integer a >= 0 with mu^a >= value (value >= 1)
unsigned long ceil_log_mu(const TentParams& p, const Rational& value);

}  // namespace tentcode
