#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qfiso {

using Int = std::int64_t;
using Wide = __int128;

/// Raised whenever an exact computation would leave the range of its
/// integer type. Never silently wrapped.
class OverflowError : public std::overflow_error {
public:
    explicit OverflowError(const std::string& where)
        : std::overflow_error("integer overflow in " + where) {}
};

namespace checked {

template <typename T>
inline T add(T a, T b, const char* where = "add") {
    T r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError(where);
    return r;
}

template <typename T>
inline T sub(T a, T b, const char* where = "sub") {
    T r;
    if (__builtin_sub_overflow(a, b, &r)) throw OverflowError(where);
    return r;
}

template <typename T>
inline T mul(T a, T b, const char* where = "mul") {
    T r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError(where);
    return r;
}

/// Narrowing conversion that throws instead of truncating.
inline Int narrow(Wide w, const char* where = "narrow") {
    if (w > Wide(INT64_MAX) || w < Wide(INT64_MIN)) throw OverflowError(where);
    return static_cast<Int>(w);
}

inline Int abs(Int a) {
    if (a == INT64_MIN) throw OverflowError("abs");
    return a < 0 ? -a : a;
}

}  // namespace checked

inline Wide abs_wide(Wide a) { return a < 0 ? -a : a; }

/// floor(sqrt(n)) for n >= 0, exact.
inline Wide isqrt(Wide n) {
    if (n < 0) throw std::domain_error("isqrt of negative value");
    if (n < 2) return n;
    // Newton from a power-of-two upper bound.
    int bits = 0;
    for (Wide t = n; t > 0; t >>= 1) ++bits;
    Wide x = Wide(1) << ((bits + 1) / 2);
    while (true) {
        Wide y = (x + n / x) / 2;
        if (y >= x) break;
        x = y;
    }
    while (x * x > n) --x;
    while ((x + 1) * (x + 1) <= n) ++x;
    return x;
}

inline Int isqrt(Int n) { return static_cast<Int>(isqrt(Wide(n))); }

inline bool is_square(Wide n, Wide* root = nullptr) {
    if (n < 0) return false;
    Wide r = isqrt(n);
    if (root) *root = r;
    return r * r == n;
}

inline bool is_square(Int n) { return is_square(Wide(n)); }

/// floor(a / b) for b > 0.
inline Wide floor_div(Wide a, Wide b) {
    Wide q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline Wide ceil_div(Wide a, Wide b) { return -floor_div(-a, b); }

/// Non-negative residue.
inline Int mod(Int a, Int m) {
    Int r = a % m;
    return r < 0 ? r + m : r;
}

inline std::string to_string(Wide v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    // Avoid negating the minimum value.
    std::string s;
    while (v != 0) {
        int digit = static_cast<int>(v % 10);
        s.push_back(static_cast<char>('0' + (digit < 0 ? -digit : digit)));
        v /= 10;
    }
    if (neg) s.push_back('-');
    return std::string(s.rbegin(), s.rend());
}

}  // namespace qfiso
