#pragma once

#include "tentcode/automaton.hpp"
#include "tentcode/bitcode.hpp"
#include "tentcode/digit_stream.hpp"
#include "tentcode/tent.hpp"

namespace tentcode {

// Precision derived from the perturbation radius: kappa = ceil(-3 lg eps / lg mu),
// the smallest k with mu^k >= eps^-3, computed by exact integer search.
struct EpsilonConfig {
    Rational epsilon;
    unsigned long kappa = 0;

    static EpsilonConfig make(const TentParams& p, const Rational& eps);
};

// Observable space proxies of one algorithm run.
struct SpaceReport {
    int max_level = 0;            // highest machine level reached
    long table_levels = 0;        // automaton levels built
    long max_rational_bits = 0;   // largest numerator+denominator bit size held
    long stream_bits_read = 0;    // input digits consumed (0 for exact input)
};

// Straightforward rounded encoding: iterate z <- round(f(z)) and emit bits
// from the rounded orbit. No validity guarantee; with coarse rounding the
// output can leave the language, which is what it demonstrates.
BitCode naive_encode(const TentParams& p, const Rational& x, size_t n, const RoundingConfig& cfg);

struct EncodeResult {
    BitCode code;
    SpaceReport space;
};

// Space-bounded valid encoding: kappa rounded-orbit bits followed by a walk
// of the transition table that always moves to the smallest live level.
// Output is a valid code lex-sandwiched between the codes of x-eps and x+eps.
EncodeResult valid_encode(const TentParams& p, const Rational& x, size_t n, const EpsilonConfig& eps);
EncodeResult valid_encode(const TentParams& p, DigitStream& x, size_t n, const EpsilonConfig& eps);

struct DecideResult {
    bool accept = false;
    SpaceReport space;
};

// Boundary-tracking state of the decision procedure.
//   case_tag 1: input still tied to both boundary codes
//   case_tag 2: tied to the upper boundary only
//   case_tag 3: tied to the lower boundary only
//   case_tag 0: strictly between both; only machine validity can reject
struct DecisionState {
    MachineState machine;
    int case_tag = 1;
    Rational z_minus, z_plus;
};

// eps-perturbed membership: accepts every code a point of [x-eps, x+eps]
// could produce, rejects every code no point of [x-2eps, x+2eps] produces,
// and may answer either way in between. Space stays within the kappa scale.
DecideResult decide(const TentParams& p, const BitCode& code, const Rational& x, const EpsilonConfig& eps);
DecideResult decide(const TentParams& p, const BitCode& code, DigitStream& x, const EpsilonConfig& eps);

}  // namespace tentcode
