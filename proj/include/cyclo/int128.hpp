#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cyclo {

using Int = std::int64_t;
// Intermediates in the construction reach ~p*q*r with q ~ p^2 and r > pq,
// so products like u*r need more than 64 bits.
using Wide = __int128;

inline std::string to_string(Wide v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
    char buf[48];
    int pos = 48;
    while (u > 0) {
        buf[--pos] = static_cast<char>('0' + static_cast<int>(u % 10));
        u /= 10;
    }
    std::string s;
    if (neg) s.push_back('-');
    s.append(buf + pos, buf + 48);
    return s;
}

inline Wide parse_wide(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("parse_wide: empty string");
    std::size_t i = 0;
    bool neg = false;
    if (s[0] == '-' || s[0] == '+') {
        neg = (s[0] == '-');
        i = 1;
    }
    if (i == s.size()) throw std::invalid_argument("parse_wide: no digits");
    Wide v = 0;
    constexpr Wide kMax = (static_cast<Wide>(1) << 126) - 1;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (c < '0' || c > '9') throw std::invalid_argument("parse_wide: bad digit in \"" + s + "\"");
        if (v > kMax / 10) throw std::out_of_range("parse_wide: overflow");
        v = v * 10 + (c - '0');
    }
    return neg ? -v : v;
}

inline Int narrow(Wide v, const char* what = "narrow") {
    if (v > static_cast<Wide>(INT64_MAX) || v < static_cast<Wide>(INT64_MIN))
        throw std::overflow_error(std::string(what) + ": value exceeds 64 bits");
    return static_cast<Int>(v);
}

// Mathematical floor division, b > 0.
inline Wide floor_div(Wide a, Wide b) {
    Wide q = a / b;
    if (a % b != 0 && a < 0) --q;
    return q;
}

// Representative of a in [0, m), m > 0.
inline Int floor_mod(Wide a, Int m) {
    Wide r = a % m;
    if (r < 0) r += m;
    return static_cast<Int>(r);
}

// (a * b) mod m for 0 <= a, b < m < 2^62.
inline Int mulmod(Int a, Int b, Int m) {
    return static_cast<Int>(static_cast<unsigned __int128>(a) * static_cast<unsigned __int128>(b) %
                            static_cast<unsigned __int128>(m));
}

}  // namespace cyclo
