#include "tentcode/encoder.hpp"

#include "doctest.h"

using namespace tentcode;

namespace {

// Definitional path: drive next_code_bit off the exact orbit. encode() takes
// a gcd-avoiding shortcut internally; the two must agree everywhere.
BitCode encode_by_orbit(const TentParams& p, const Rational& x, size_t n) {
    BitCode out;
    Rational z = x;
    int prev = 0;
    for (size_t i = 0; i < n; ++i) {
        int b = next_code_bit(prev, cmp3(z, half()));
        out.push_back(b);
        prev = b;
        z = tent_apply(p, z);
    }
    return out;
}

}  // namespace

TEST_CASE("bit rule: repeats below 1/2, flips above, tie emits 1") {
    CHECK(next_code_bit(0, -1) == 0);
    CHECK(next_code_bit(0, 0) == 1);
    CHECK(next_code_bit(0, 1) == 1);
    CHECK(next_code_bit(1, -1) == 1);
    CHECK(next_code_bit(1, 0) == 1);
    CHECK(next_code_bit(1, 1) == 0);
}

TEST_CASE("known codes") {
    TentParams p(8, 5);
    CHECK(encode(p, Rational(1, 2), 6).str() == "100100");
    CHECK(encode(p, Rational(0), 8).str() == "00000000");
    CHECK(encode(p, Rational(1, 4), 1).str() == "0");
    CHECK(encode(p, Rational(1, 2), 1).str() == "1");
    CHECK(encode(p, Rational(3, 4), 1).str() == "1");
    // critical-point code of the slope used throughout the validity examples
    CHECK(encode(TentParams(81, 50), Rational(1, 2), 15).str() == "100011011011011");
}

TEST_CASE("encode domain") {
    TentParams p(8, 5);
    CHECK_THROWS_AS(encode(p, Rational(1), 3), std::domain_error);
    CHECK_THROWS_AS(encode(p, Rational(-1, 2), 3), std::domain_error);
    CHECK(encode(p, Rational(0), 0).size() == 0);
}

TEST_CASE("shortcut encoder matches the definitional orbit path") {
    for (auto& p : {TentParams(8, 5), TentParams(81, 50), TentParams(3, 2)}) {
        for (long num = 0; num < 113; num += 7) {
            Rational x(num, 113);
            CHECK(encode(p, x, 24) == encode_by_orbit(p, x, 24));
        }
        // points whose orbit hits 1/2 exercise the tie row
        CHECK(encode(p, Rational(1, 2), 16) == encode_by_orbit(p, Rational(1, 2), 16));
        CHECK(encode(p, Rational(0), 16) == encode_by_orbit(p, Rational(0), 16));
    }
}

TEST_CASE("prefix stability") {
    TentParams p(8, 5);
    for (long num : {1L, 37L, 56L, 99L}) {
        Rational x(num, 113);
        BitCode c20 = encode(p, x, 20);
        for (size_t m : {1u, 7u, 19u}) CHECK(c20.prefix(m) == encode(p, x, m));
    }
}

TEST_CASE("code order refines point order") {
    TentParams p(8, 5);
    size_t n = 20;
    Rational prev_x(0);
    BitCode prev_c = encode(p, prev_x, n);
    for (long num = 1; num < 157; ++num) {
        Rational x(num, 157);
        BitCode c = encode(p, x, n);
        CHECK(lex_compare(prev_c, c) <= 0);
        prev_c = c;
    }
}

TEST_CASE("reconstruction") {
    TentParams p(8, 5);
    CHECK(reconstruct(p, BitCode::parse("1")) == Rational(3, 8));
    CHECK(reconstruct(p, BitCode::parse("")) == Rational(0));
    CHECK(reconstruct(p, BitCode::parse("0")) == Rational(0));

    // |reconstruct(code^n(x)) - x| <= mu^-n
    for (auto& pp : {TentParams(8, 5), TentParams(81, 50)}) {
        size_t n = 30;
        Rational tol = Rational(pow_int(pp.d, n), pow_int(pp.c, n));  // mu^-n
        for (long num = 0; num < 131; num += 3) {
            Rational x(num, 131);
            Rational err = reconstruct(pp, encode(pp, x, n)) - x;
            if (err < Rational(0)) err = -err;
            CHECK(err <= tol);
        }
    }
}

TEST_CASE("orbit trace") {
    TentParams p(8, 5);
    auto orbit = orbit_trace(p, Rational(1, 2), 2);
    REQUIRE(orbit.size() == 3);
    CHECK(orbit[0] == Rational(1, 2));
    CHECK(orbit[1] == Rational(4, 5));
    CHECK(orbit[2] == Rational(8, 25));
}
