#pragma once

// Which integers are represented by which classes and genera of a form
// class group, and how often.

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "arith.hpp"
#include "form.hpp"

namespace qfiso {

struct RepSolution {
    Int x = 0, y = 0;
    bool primitive = false;
    bool operator==(const RepSolution&) const = default;
    auto operator<=>(const RepSolution&) const = default;
};

/// Every (x, y) with f(x, y) = n. Complete: |D| y^2 <= 4 a n bounds y, and x
/// is recovered from the exact square root of the discriminant in x.
inline std::vector<RepSolution> solutions(const Form& f, Int n) {
    if (!f.is_positive_definite()) throw std::invalid_argument("solutions: form is not positive definite");
    if (n < 1) throw std::invalid_argument("solutions: n must be positive");
    const Wide d = f.discriminant();
    const Wide four_an = checked::mul(Wide(4) * f.a, Wide(n), "solutions");
    const Int ymax = static_cast<Int>(isqrt(four_an / (-d)));
    std::vector<RepSolution> out;
    for (Int y = -ymax; y <= ymax; ++y) {
        Wide disc = d * y * y + four_an;
        Wide s;
        if (!is_square(disc, &s)) continue;
        for (Wide root : {-s, s}) {
            Wide num = root - Wide(f.b) * y;
            if (num % (2 * f.a) != 0) continue;
            Int x = static_cast<Int>(num / (2 * f.a));
            out.push_back({x, y, gcd(x, y) == 1});
            if (s == 0) break;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline bool represents(const Form& f, Int n) {
    if (n < 1) throw std::invalid_argument("represents: n must be positive");
    const Wide d = f.discriminant();
    const Wide four_an = checked::mul(Wide(4) * f.a, Wide(n), "represents");
    const Int ymax = static_cast<Int>(isqrt(four_an / (-d)));
    for (Int y = 0; y <= ymax; ++y) {
        Wide s;
        if (!is_square(d * y * y + four_an, &s)) continue;
        if ((s - Wide(f.b) * y) % (2 * f.a) == 0 || (-s - Wide(f.b) * y) % (2 * f.a) == 0) return true;
    }
    return false;
}

inline bool represents(const FormClass& c, Int n) { return represents(c.repr(), n); }

/// Bitset of all values f(x, y) <= bound, for fast bulk membership queries.
class RepresentedValues {
public:
    RepresentedValues(const Form& f, Int bound) : bound_(bound), bits_(static_cast<std::size_t>(bound) + 1, false) {
        const Wide d = -Wide(f.discriminant());
        const Wide four_a_bound = Wide(4) * f.a * bound;
        for (Int y = 0; d * y * y <= four_a_bound; ++y) {
            Wide s = isqrt(four_a_bound - d * y * y);
            Int lo = static_cast<Int>(ceil_div(-s - Wide(f.b) * y, 2 * f.a));
            Int hi = static_cast<Int>(floor_div(s - Wide(f.b) * y, 2 * f.a));
            for (Int x = lo; x <= hi; ++x) {
                Wide v = f(x, y);
                if (v >= 1 && v <= bound) bits_[static_cast<std::size_t>(v)] = true;
            }
        }
    }

    Int bound() const { return bound_; }
    bool contains(Int n) const {
        if (n < 1) return false;
        if (n > bound_) throw std::out_of_range("RepresentedValues: query above bound");
        return bits_[static_cast<std::size_t>(n)];
    }

private:
    Int bound_;
    std::vector<bool> bits_;
};

/// Lazily built value sets for the classes of one class group.
class ValueOracle {
public:
    ValueOracle(const ClassGroup& g, Int bound) : group_(&g), bound_(bound), sets_(g.order()) {}

    const ClassGroup& group() const { return *group_; }
    Int bound() const { return bound_; }

    bool represents(std::size_t cls, Int n) const {
        if (n > bound_) return qfiso::represents(group_->element(cls), n);
        auto& slot = sets_.at(cls);
        if (!slot) slot.emplace(group_->element(cls).repr(), bound_);
        return slot->contains(n);
    }

    bool represented_by_genus(std::size_t cls, Int n) const {
        for (std::size_t j : group_->genus_members(group_->genus(cls)))
            if (represents(j, n)) return true;
        return false;
    }

    bool represented_by_any(Int n) const {
        for (std::size_t j = 0; j < group_->order(); ++j)
            if (represents(j, n)) return true;
        return false;
    }

private:
    const ClassGroup* group_;
    Int bound_;
    mutable std::vector<std::optional<RepresentedValues>> sets_;
};

/// Units count w of the order of discriminant d.
inline Int unit_count(Int d) { return d == -3 ? 6 : d == -4 ? 4 : 2; }

namespace detail {
inline void check_psi_args(Int n, Int d, const char* who) {
    if (n < 1) throw std::invalid_argument(std::string(who) + ": n must be positive");
    if (!is_valid_discriminant(d)) throw std::invalid_argument(std::string(who) + ": invalid discriminant");
    if (gcd(n, d) != 1) throw std::invalid_argument(std::string(who) + ": requires gcd(n, D) = 1");
}
}  // namespace detail

/// Total number of primitive representations of n by a full set of class
/// representatives, gcd(n, D) = 1. This is w * sum over squarefree t | n of
/// (D/t), i.e. w * prod_{q | n} (1 + (D/q)).
inline Int psi(Int n, Int d) {
    detail::check_psi_args(n, d, "psi");
    Int prod = unit_count(d);
    for (const auto& pp : factor(n).factors) prod *= 1 + kronecker(d, pp.prime);
    return prod;
}

/// w * sum_{t | n} (D/t) over all divisors: this counts every representation,
/// primitive or not (it is the sum of psi(n / k^2) over k^2 | n).
inline Int total_representations(Int n, Int d) {
    detail::check_psi_args(n, d, "total_representations");
    Int sum = 0;
    for (Int t = 1; t <= n / t; ++t) {
        if (n % t != 0) continue;
        sum += kronecker(d, t);
        if (t != n / t) sum += kronecker(d, n / t);
    }
    return unit_count(d) * sum;
}

inline std::vector<FormClass> classes_representing(Int n, const ClassGroup& g) {
    std::vector<FormClass> out;
    for (const auto& c : g.elements())
        if (represents(c, n)) out.push_back(c);
    return out;
}

/// n is represented by some class in the genus of c. For positive definite
/// binary forms this is the same as representation over every Z_p.
inline bool represented_by_genus(Int n, const FormClass& c, const ClassGroup& g) {
    for (std::size_t j : g.genus_members(genus_of(c, g)))
        if (represents(g.element(j), n)) return true;
    return false;
}

struct NoClassCriterion {
    bool holds = false;           // some prime p | sf(n) has (D/p) = -1
    std::optional<Int> witness;   // the least such prime
};

/// Evaluates "some prime dividing sf(n) is inert for D". Requires gcd(n, D) = 1.
inline NoClassCriterion no_class_represents_iff(Int n, Int d) {
    if (n < 1) throw std::invalid_argument("no_class_represents_iff: n must be positive");
    if (gcd(n, d) != 1) throw std::invalid_argument("no_class_represents_iff: requires gcd(n, D) = 1");
    for (const auto& pp : factor(squarefree_part(n)).factors)
        if (kronecker(d, pp.prime) == -1) return {true, pp.prime};
    return {};
}

/// Which of the three regimes governs the primes p with np^2 -> C, given n -/-> C.
enum class Np2Regime {
    NotRepresentedByGroup = 1,  // no class of the group represents n
    NotRepresentedByGenus = 2,  // n represented by the group but not by gen(C)
    RepresentedByGenus = 3,     // n -> gen(C)
};

struct Np2Report {
    Int n = 0;
    FormClass cls;
    Np2Regime regime = Np2Regime::RepresentedByGenus;
    Int bound = 0;
    std::vector<Int> observed;           // primes p <= bound with np^2 -> C
    std::vector<Int> observed_coprime;   // those not dividing D
    std::vector<Int> predicted;          // regime 3: p -> D' with n -> C D'^2
    bool consistent = false;
};

inline Np2Report classify_np2_primes(Int n, const FormClass& c, const ClassGroup& g, Int bound) {
    if (represents(c, n)) throw std::invalid_argument("classify_np2_primes: n is represented by the class");
    const Int d = g.discriminant();
    Np2Report r;
    r.n = n;
    r.cls = c;
    r.bound = bound;
    const std::size_t ci = g.index_of(c);
    if (classes_representing(n, g).empty())
        r.regime = Np2Regime::NotRepresentedByGroup;
    else if (!represented_by_genus(n, c, g))
        r.regime = Np2Regime::NotRepresentedByGenus;
    else
        r.regime = Np2Regime::RepresentedByGenus;

    for (Int p : primes_up_to(bound)) {
        Int np2 = checked::mul(n, checked::mul(p, p));
        if (represents(c, np2)) {
            r.observed.push_back(p);
            if (d % p != 0) r.observed_coprime.push_back(p);
        }
        if (r.regime != Np2Regime::RepresentedByGenus) continue;
        for (std::size_t j = 0; j < g.order(); ++j) {
            if (!represents(g.element(j), p)) continue;
            std::size_t target = g.multiply(ci, g.multiply(j, j));
            if (represents(g.element(target), n)) {
                r.predicted.push_back(p);
                break;
            }
        }
    }
    switch (r.regime) {
        case Np2Regime::NotRepresentedByGroup:
            r.consistent = r.observed.empty();
            break;
        case Np2Regime::NotRepresentedByGenus:
            r.consistent = std::all_of(r.observed.begin(), r.observed.end(), [&](Int p) { return d % p == 0; });
            break;
        case Np2Regime::RepresentedByGenus:
            r.consistent = r.observed_coprime == r.predicted;
            break;
    }
    return r;
}

}  // namespace qfiso
