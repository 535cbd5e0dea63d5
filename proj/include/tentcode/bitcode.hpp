#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace tentcode {

// A finite 0/1 word (a tent code or a prefix of one).
class BitCode {
public:
    BitCode() = default;
    explicit BitCode(std::vector<uint8_t> bits) : bits_(std::move(bits)) {}

    // Accepts '0'/'1' with optional grouping spaces; anything else is an error.
    static BitCode parse(const std::string& s) {
        BitCode c;
        c.bits_.reserve(s.size());
        for (char ch : s) {
            if (ch == ' ') continue;
            if (ch == '0' || ch == '1')
                c.bits_.push_back(static_cast<uint8_t>(ch - '0'));
            else
                throw std::invalid_argument("bit code: unexpected character '" + std::string(1, ch) + "'");
        }
        return c;
    }

    size_t size() const { return bits_.size(); }
    bool empty() const { return bits_.empty(); }
    int operator[](size_t i) const { return bits_[i]; }
    void push_back(int b) { bits_.push_back(static_cast<uint8_t>(b)); }
    void reserve(size_t n) { bits_.reserve(n); }

    std::string str() const {
        std::string s;
        s.reserve(bits_.size());
        for (uint8_t b : bits_) s.push_back(static_cast<char>('0' + b));
        return s;
    }

    BitCode prefix(size_t n) const {
        if (n > bits_.size()) throw std::out_of_range("bit code: prefix longer than code");
        return BitCode(std::vector<uint8_t>(bits_.begin(), bits_.begin() + n));
    }

    friend bool operator==(const BitCode& a, const BitCode& b) { return a.bits_ == b.bits_; }
    friend bool operator!=(const BitCode& a, const BitCode& b) { return !(a == b); }

private:
    std::vector<uint8_t> bits_;
};

// Lexicographic three-way comparison of equal-length codes: -1, 0, +1.
// Codes of different lengths are not comparable here by design; the order
// tracking the tent map's value order is only defined levelwise.
inline int lex_compare(const BitCode& a, const BitCode& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("lex_compare: codes must have equal length");
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
}

}  // namespace tentcode
