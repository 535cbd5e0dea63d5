#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace tentcode {

using Int = mpz_class;

// Exact rational number, always kept in lowest terms with a positive
// denominator. Thin wrapper over GMP's mpq_class: mpq keeps results of
// arithmetic canonical, but raw (num, den) construction does not, so all
// construction funnels through here.
class Rational {
public:
    Rational() : q_(0) {}
    Rational(int n) : q_(n) {}
    Rational(long n) : q_(static_cast<signed long>(n)) {}
    Rational(const Int& n) : q_(n) {}

    Rational(const Int& num, const Int& den) {
        if (den == 0) throw std::domain_error("rational: zero denominator");
        q_ = mpq_class(num, den);
        q_.canonicalize();
    }
    Rational(long num, long den) : Rational(Int(num), Int(den)) {}

    // Accepts "p/q" or a plain integer "p"; whitespace is not allowed.
    static Rational parse(const std::string& s) {
        auto slash = s.find('/');
        try {
            if (slash == std::string::npos) return Rational(Int(s));
            return Rational(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
        } catch (const std::invalid_argument&) {
            throw std::invalid_argument("rational: cannot parse '" + s + "'");
        }
    }

    Int num() const { return q_.get_num(); }
    Int den() const { return q_.get_den(); }

    std::string str() const {
        if (q_.get_den() == 1) return q_.get_num().get_str();
        return q_.get_num().get_str() + "/" + q_.get_den().get_str();
    }

    // Total bit length of numerator plus denominator; the size measure used
    // by the space reports.
    long bit_size() const {
        return static_cast<long>(mpz_sizeinbase(q_.get_num().get_mpz_t(), 2) +
                                 mpz_sizeinbase(q_.get_den().get_mpz_t(), 2));
    }

    double to_double() const { return q_.get_d(); }

    friend Rational operator+(const Rational& a, const Rational& b) { return Rational(a.q_ + b.q_); }
    friend Rational operator-(const Rational& a, const Rational& b) { return Rational(a.q_ - b.q_); }
    friend Rational operator*(const Rational& a, const Rational& b) { return Rational(a.q_ * b.q_); }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.q_ == 0) throw std::domain_error("rational: division by zero");
        return Rational(a.q_ / b.q_);
    }
    Rational operator-() const { return Rational(mpq_class(-q_)); }

    Rational& operator+=(const Rational& b) { q_ += b.q_; return *this; }
    Rational& operator-=(const Rational& b) { q_ -= b.q_; return *this; }
    Rational& operator*=(const Rational& b) { q_ *= b.q_; return *this; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.q_ <= b.q_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.q_ > b.q_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.q_ >= b.q_; }

    // sign(a - b) as -1 / 0 / +1
    friend int cmp3(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_); }

private:
    explicit Rational(const mpq_class& q) : q_(q) {}
    mpq_class q_;
};

// floor(x): largest integer <= x, exact.
inline Int rational_floor(const Rational& x) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), x.num().get_mpz_t(), x.den().get_mpz_t());
    return q;
}

inline Int pow_int(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

// 2^e as an Int
inline Int pow2_int(unsigned long e) {
    Int r = 1;
    r <<= e;
    return r;
}

}  // namespace tentcode
