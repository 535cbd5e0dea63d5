#pragma once

#include "tentcode/bitcode.hpp"
#include "tentcode/rational.hpp"

#include <cstddef>

namespace tentcode {

// Binary digits of a real x in [0,1), most significant first. Consumers pull
// digits through take() so the number of digits actually read is observable;
// the space-bounded algorithms read at most kappa + 2 of them.
class DigitStream {
public:
    virtual ~DigitStream() = default;

    int take() {
        ++count_;
        return next();
    }
    size_t bits_read() const { return count_; }

protected:
    virtual int next() = 0;

private:
    size_t count_ = 0;
};

// Digits of an exact rational in [0,1).
class RationalDigitStream final : public DigitStream {
public:
    explicit RationalDigitStream(const Rational& x) : frac_(x) {
        if (x < Rational(0) || x >= Rational(1))
            throw std::domain_error("digit stream: x must be in [0, 1)");
    }

protected:
    int next() override {
        frac_ = frac_ + frac_;
        if (frac_ >= Rational(1)) {
            frac_ -= Rational(1);
            return 1;
        }
        return 0;
    }

private:
    Rational frac_;
};

// A finite digit word, zero-extended past its end (i.e. the dyadic rational
// 0.<word> exactly).
class WordDigitStream final : public DigitStream {
public:
    explicit WordDigitStream(BitCode word) : word_(std::move(word)) {}

protected:
    int next() override { return pos_ < word_.size() ? word_[pos_++] : 0; }

private:
    BitCode word_;
    size_t pos_ = 0;
};

// The value of the next m digits as P / 2^m (truncation of the remaining
// stream value to m digits).
inline Rational read_stream_prefix(DigitStream& s, unsigned long m) {
    Int p = 0;
    for (unsigned long i = 0; i < m; ++i) p = 2 * p + s.take();
    return Rational(p, pow2_int(m));
}

// Round-to-nearest at precision kappa, exactly as if applied to the full
// stream value: with one guard digit, floor((P+1)/2) / 2^kappa reproduces
// round-half-up of x because the discarded tail is < 2^-(kappa+1).
inline Rational stream_round_nearest(DigitStream& s, unsigned long kappa) {
    Int p = 0;
    for (unsigned long i = 0; i < kappa + 1; ++i) p = 2 * p + s.take();
    Int q;
    Int p1 = p + 1;
    mpz_fdiv_q_2exp(q.get_mpz_t(), p1.get_mpz_t(), 1);
    return Rational(q, pow2_int(kappa));
}

}  // namespace tentcode
