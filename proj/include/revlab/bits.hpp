#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace revlab {

// splitmix64, the usual seed expander. Deterministic across platforms.
inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline uint64_t width_mask(unsigned width) {
    if (width == 0) return 0;
    if (width >= 64) return ~0ull;
    return (1ull << width) - 1;
}

// Big-endian rendering: bit (width-1) of the value comes first.
inline std::string to_bits(uint64_t v, unsigned width) {
    std::string s(width, '0');
    for (unsigned i = 0; i < width; ++i)
        if (v >> (width - 1 - i) & 1) s[i] = '1';
    return s;
}

inline bool is_bit_string(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (c != '0' && c != '1') return false;
    return true;
}

inline uint64_t from_bits(std::string_view s) {
    if (s.size() > 64 || !is_bit_string(s))
        throw std::invalid_argument("from_bits: not a bit string: " + std::string(s));
    uint64_t v = 0;
    for (char c : s) v = v << 1 | uint64_t(c == '1');
    return v;
}

// Unprefixed lowercase hex, fixed width of ceil(width/4) digits.
inline std::string to_hex(uint64_t v, unsigned width) {
    unsigned digits = (width + 3) / 4;
    if (digits == 0) digits = 1;
    static const char* kHex = "0123456789abcdef";
    std::string s(digits, '0');
    for (unsigned i = 0; i < digits; ++i)
        s[digits - 1 - i] = kHex[v >> (4 * i) & 0xf];
    return s;
}

inline uint64_t from_hex(std::string_view s) {
    if (s.empty() || s.size() > 16)
        throw std::invalid_argument("from_hex: bad literal: " + std::string(s));
    uint64_t v = 0;
    for (char c : s) {
        int d;
        if (c >= '0' && c <= '9') d = c - '0';
        else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
        else throw std::invalid_argument("from_hex: bad digit: " + std::string(s));
        v = v << 4 | uint64_t(d);
    }
    return v;
}

}  // namespace revlab
