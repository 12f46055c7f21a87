#pragma once

// Elementary exact number theory: Kronecker symbol, trial-division
// factorization, squarefree parts and prime searches.

#include <numeric>
#include <stdexcept>
#include <vector>

#include "checked.hpp"

namespace qfiso {

inline Int gcd(Int a, Int b) { return std::gcd(a, b); }

/// Extended gcd: returns g = gcd(a, b) >= 0 with x*a + y*b = g.
inline Int xgcd(Int a, Int b, Int& x, Int& y) {
    Int old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        Int q = old_r / r;
        Int tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = checked::sub(old_s, checked::mul(q, s));
        old_s = s;
        s = tmp;
        tmp = checked::sub(old_t, checked::mul(q, t));
        old_t = t;
        t = tmp;
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    x = old_s;
    y = old_t;
    return old_r;
}

/// Kronecker symbol (a/n). Defined for all (a, n) except a = n = 0.
inline int kronecker(Int a, Int n) {
    if (a == 0 && n == 0) throw std::invalid_argument("kronecker(0, 0) is undefined");
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    int result = 1;
    if (n < 0) {
        n = checked::abs(n);
        if (a < 0) result = -result;
    }
    int twos = 0;
    while ((n & 1) == 0) {
        n >>= 1;
        ++twos;
    }
    if (twos > 0) {
        if ((a & 1) == 0) return 0;
        if (twos & 1) {
            Int r = mod(a, 8);
            if (r == 3 || r == 5) result = -result;
        }
    }
    // Jacobi symbol (a/n) for odd n > 0.
    Int x = mod(a, n);
    while (x != 0) {
        while ((x & 1) == 0) {
            x >>= 1;
            Int r = n % 8;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(x, n);
        if (x % 4 == 3 && n % 4 == 3) result = -result;
        x %= n;
    }
    return n == 1 ? result : 0;
}

struct PrimePower {
    Int prime;
    int exponent;
    bool operator==(const PrimePower&) const = default;
};

/// Prime factorization; factors are listed with strictly increasing primes.
struct Factorization {
    int sign = 1;
    std::vector<PrimePower> factors;

    Int value() const {
        Int v = sign;
        for (const auto& f : factors)
            for (int i = 0; i < f.exponent; ++i) v = checked::mul(v, f.prime, "Factorization::value");
        return v;
    }

    /// Exponent of q in the factorization (0 if absent).
    int ord(Int q) const {
        for (const auto& f : factors)
            if (f.prime == q) return f.exponent;
        return 0;
    }

    bool operator==(const Factorization&) const = default;
};

inline bool is_prime(Int n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0 || n % 3 == 0) return false;
    for (Int d = 5; d <= n / d; d += 6)
        if (n % d == 0 || n % (d + 2) == 0) return false;
    return true;
}

inline Factorization factor(Int n) {
    if (n == 0) throw std::invalid_argument("factor(0)");
    Factorization f;
    if (n < 0) {
        f.sign = -1;
        n = checked::abs(n);
    }
    for (Int p = 2; p <= n / p; p += (p == 2 ? 1 : 2)) {
        if (n % p != 0) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        f.factors.push_back({p, e});
    }
    if (n > 1) f.factors.push_back({n, 1});
    return f;
}

/// Product of the primes dividing n to an odd power.
inline Int squarefree_part(Int n) {
    if (n < 1) throw std::invalid_argument("squarefree_part requires n >= 1");
    Int s = 1;
    for (const auto& f : factor(n).factors)
        if (f.exponent % 2 == 1) s *= f.prime;
    return s;
}

inline std::vector<Int> primes_up_to(Int bound) {
    std::vector<Int> out;
    if (bound < 2) return out;
    std::vector<bool> composite(static_cast<std::size_t>(bound) + 1, false);
    for (Int p = 2; p <= bound; ++p) {
        if (composite[p]) continue;
        out.push_back(p);
        for (Int m = p * p; m <= bound; m += p) composite[m] = true;
    }
    return out;
}

/// A requirement kronecker(a, p) == symbol on a prime p.
struct KroneckerCondition {
    Int a;
    int symbol;
};

/// All primes p <= bound meeting every condition, increasing.
inline std::vector<Int> find_primes_with_conditions(const std::vector<KroneckerCondition>& conds,
                                                    Int bound) {
    if (bound < 2) throw std::invalid_argument("find_primes_with_conditions requires bound >= 2");
    std::vector<Int> out;
    for (Int p : primes_up_to(bound)) {
        bool ok = true;
        for (const auto& c : conds)
            if (kronecker(c.a, p) != c.symbol) {
                ok = false;
                break;
            }
        if (ok) out.push_back(p);
    }
    return out;
}

}  // namespace qfiso
