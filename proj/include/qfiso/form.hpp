#pragma once

// Positive definite binary quadratic forms ax^2 + bxy + cy^2: reduction,
// composition and the form class group of a negative discriminant.

#include <algorithm>
#include <array>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "arith.hpp"
#include "checked.hpp"

namespace qfiso {

struct Form {
    Int a = 1, b = 0, c = 1;

    Int discriminant() const {
        return checked::narrow(Wide(b) * b - Wide(4) * a * c, "Form::discriminant");
    }
    Int content() const { return gcd(gcd(a, b), c); }
    bool is_primitive() const { return content() == 1; }
    bool is_positive_definite() const { return a > 0 && discriminant() < 0; }

    /// f(x, y), exact.
    Wide operator()(Int x, Int y) const {
        return Wide(a) * x * x + Wide(b) * x * y + Wide(c) * y * y;
    }

    bool is_reduced() const {
        if (!(std::abs(b) <= a && a <= c)) return false;
        if ((std::abs(b) == a || a == c) && b < 0) return false;
        return true;
    }

    bool operator==(const Form&) const = default;
    auto operator<=>(const Form&) const = default;
};

inline Int discriminant(const Form& f) { return f.discriminant(); }

inline std::ostream& operator<<(std::ostream& os, const Form& f) {
    return os << '(' << f.a << ',' << f.b << ',' << f.c << ')';
}

/// 2x2 integer matrix [[m00, m01], [m10, m11]] acting on column vectors (x, y).
struct Mat2 {
    Int m00 = 1, m01 = 0, m10 = 0, m11 = 1;

    Int det() const { return checked::narrow(Wide(m00) * m11 - Wide(m01) * m10, "Mat2::det"); }

    friend Mat2 operator*(const Mat2& p, const Mat2& q) {
        auto dot = [](Int x0, Int x1, Int y0, Int y1) {
            return checked::narrow(Wide(x0) * y0 + Wide(x1) * y1, "Mat2 product");
        };
        return {dot(p.m00, p.m01, q.m00, q.m10), dot(p.m00, p.m01, q.m01, q.m11),
                dot(p.m10, p.m11, q.m00, q.m10), dot(p.m10, p.m11, q.m01, q.m11)};
    }

    bool operator==(const Mat2&) const = default;
};

/// The form f(m00 x + m01 y, m10 x + m11 y).
inline Form transform(const Form& f, const Mat2& m) {
    Wide a = f(m.m00, m.m10);
    Wide c = f(m.m01, m.m11);
    Wide b = Wide(2) * f.a * m.m00 * m.m01 + Wide(f.b) * (Wide(m.m00) * m.m11 + Wide(m.m01) * m.m10) +
             Wide(2) * f.c * m.m10 * m.m11;
    return {checked::narrow(a, "transform"), checked::narrow(b, "transform"), checked::narrow(c, "transform")};
}

struct Reduction {
    Form form;
    Mat2 transform;  // determinant 1, carries the input to `form`
};

/// Gaussian reduction to the unique reduced form in the proper class.
inline Reduction reduce(const Form& f) {
    if (!f.is_positive_definite()) throw std::invalid_argument("reduce: form is not positive definite");
    Form g = f;
    Mat2 u;
    auto normalize_b = [&]() {
        // b <- b + 2ak in (-a, a]
        Int two_a = checked::mul(Int(2), g.a);
        Int k = static_cast<Int>(floor_div(Wide(g.a) - g.b, two_a));
        if (k == 0) return;
        Mat2 t{1, k, 0, 1};
        g = transform(g, t);
        u = u * t;
    };
    auto swap_ac = [&]() {
        Mat2 s{0, -1, 1, 0};
        g = {g.c, -g.b, g.a};
        u = u * s;
    };
    normalize_b();
    while (g.a > g.c) {
        swap_ac();
        normalize_b();
    }
    if (g.a == g.c && g.b < 0) swap_ac();
    return {g, u};
}

/// Class of a primitive positive definite form: its reduced representative.
class FormClass {
public:
    FormClass() = default;
    explicit FormClass(const Form& f) : repr_(reduce(f).form) {
        if (!repr_.is_primitive()) throw std::invalid_argument("FormClass: form is not primitive");
    }

    const Form& repr() const { return repr_; }
    Int discriminant() const { return repr_.discriminant(); }

    bool operator==(const FormClass&) const = default;
    auto operator<=>(const FormClass&) const = default;

private:
    Form repr_;
};

inline std::ostream& operator<<(std::ostream& os, const FormClass& c) { return os << c.repr(); }

inline bool is_valid_discriminant(Int d) { return d < 0 && (mod(d, 4) == 0 || mod(d, 4) == 1); }

inline Form principal_form(Int d) {
    if (!is_valid_discriminant(d)) throw std::invalid_argument("invalid discriminant " + std::to_string(d));
    return mod(d, 4) == 0 ? Form{1, 0, -d / 4} : Form{1, 1, (1 - d) / 4};
}

inline FormClass identity_class(Int d) { return FormClass(principal_form(d)); }

inline FormClass inverse(const FormClass& x) {
    const Form& f = x.repr();
    return FormClass(Form{f.a, -f.b, f.c});
}

/// Composition of two primitive forms of the same discriminant (Dirichlet
/// composition with gcd preprocessing), followed by reduction.
inline FormClass compose(const FormClass& x, const FormClass& y) {
    const Int d = x.discriminant();
    if (y.discriminant() != d) throw std::invalid_argument("compose: discriminants differ");
    Form f1 = x.repr(), f2 = y.repr();
    if (f1.a > f2.a) std::swap(f1, f2);
    // b1 and b2 share the parity of d, so s and n are integral.
    const Int s = (f1.b + f2.b) / 2;
    const Int n = f2.b - s;
    Int y1, d0;
    if (f2.a % f1.a == 0) {
        y1 = 0;
        d0 = f1.a;
    } else {
        Int u, v;
        d0 = xgcd(f2.a, f1.a, u, v);
        y1 = u;
    }
    Int x2, y2, d1;
    if (s % d0 == 0) {
        y2 = -1;
        x2 = 0;
        d1 = d0;
    } else {
        Int u, v;
        d1 = xgcd(s, d0, u, v);
        x2 = u;
        y2 = -v;
    }
    const Int v1 = f1.a / d1, v2 = f2.a / d1;
    Wide r = (Wide(y1) * y2 * n - Wide(x2) * f2.c) % v1;
    if (r < 0) r += v1;
    const Int a3 = checked::mul(v1, v2, "compose");
    const Int b3 = checked::narrow(Wide(f2.b) + Wide(2) * v2 * r, "compose");
    const Wide num = Wide(b3) * b3 - d;
    const Wide den = Wide(4) * a3;
    if (num % den != 0) throw std::logic_error("compose: non-integral third coefficient");
    return FormClass(Form{a3, b3, checked::narrow(num / den, "compose")});
}

/// All reduced primitive forms of discriminant d, ordered by (a, b, c).
inline std::vector<Form> reduced_forms(Int d) {
    if (!is_valid_discriminant(d)) throw std::invalid_argument("invalid discriminant " + std::to_string(d));
    std::vector<Form> out;
    for (Int a = 1; 3 * a * a <= -d; ++a)
        for (Int b = -a + 1; b <= a; ++b) {
            if (mod(b - d, 2) != 0) continue;
            Wide num = Wide(b) * b - d;
            if (num % (4 * a) != 0) continue;
            Int c = static_cast<Int>(num / (4 * a));
            Form f{a, b, c};
            if (c < a || !f.is_reduced() || !f.is_primitive()) continue;
            out.push_back(f);
        }
    std::sort(out.begin(), out.end());
    return out;
}

/// The form class group of a negative discriminant, with its full
/// multiplication table and derived structure.
class ClassGroup {
public:
    explicit ClassGroup(Int d) : d_(d) {
        for (const auto& f : reduced_forms(d)) elements_.emplace_back(f);
        const std::size_t h = elements_.size();
        for (std::size_t i = 0; i < h; ++i) index_.emplace(elements_[i].repr(), i);
        table_.assign(h, std::vector<std::size_t>(h));
        for (std::size_t i = 0; i < h; ++i)
            for (std::size_t j = i; j < h; ++j) table_[i][j] = table_[j][i] = index_of(compose(elements_[i], elements_[j]));
        identity_ = index_of(identity_class(d));
        orders_.assign(h, 0);
        for (std::size_t i = 0; i < h; ++i) {
            std::size_t x = i;
            int k = 1;
            while (x != identity_) {
                x = table_[x][i];
                ++k;
            }
            orders_[i] = k;
        }
        std::vector<bool> is_square(h, false);
        for (std::size_t i = 0; i < h; ++i) is_square[table_[i][i]] = true;
        genus_.assign(h, -1);
        int next = 0;
        // Cosets of the squares subgroup, numbered by first member.
        for (std::size_t i = 0; i < h; ++i) {
            if (genus_[i] >= 0) continue;
            for (std::size_t j = 0; j < h; ++j)
                if (is_square[j]) genus_[table_[i][j]] = next;
            ++next;
        }
        genus_count_ = next;
    }

    Int discriminant() const { return d_; }
    std::size_t order() const { return elements_.size(); }
    const std::vector<FormClass>& elements() const { return elements_; }
    const FormClass& element(std::size_t i) const { return elements_.at(i); }
    std::size_t identity_index() const { return identity_; }
    const FormClass& identity() const { return elements_[identity_]; }

    std::size_t index_of(const FormClass& x) const {
        auto it = index_.find(x.repr());
        if (it == index_.end()) throw std::invalid_argument("class does not belong to this group");
        return it->second;
    }

    std::size_t multiply(std::size_t i, std::size_t j) const { return table_.at(i).at(j); }
    std::size_t inverse_index(std::size_t i) const { return index_of(qfiso::inverse(elements_.at(i))); }
    const std::vector<std::vector<std::size_t>>& table() const { return table_; }

    int element_order(std::size_t i) const { return orders_.at(i); }
    const std::vector<int>& orders() const { return orders_; }
    bool is_ambiguous(std::size_t i) const { return table_.at(i).at(i) == identity_; }

    /// Genus (coset of the squares subgroup) of an element; 0 is the principal genus.
    int genus(std::size_t i) const { return genus_.at(i); }
    int genus_count() const { return genus_count_; }
    std::vector<std::size_t> genus_members(int g) const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < order(); ++i)
            if (genus_[i] == g) out.push_back(i);
        return out;
    }

    /// Invariant factors n1 | n2 | ... of the group (empty for the trivial group).
    std::vector<Int> invariant_factors() const {
        std::vector<Int> factors;  // built as products of prime-power parts
        Factorization hf = factor(static_cast<Int>(order()));
        std::vector<std::vector<Int>> per_prime;
        for (const auto& pp : hf.factors) {
            // count[k] = #{x : x^(p^k) = e}; p^(sum min(k, e_i)).
            std::vector<int> log_counts;
            for (int k = 0; k <= pp.exponent; ++k) {
                Int pk = 1;
                for (int t = 0; t < k; ++t) pk *= pp.prime;
                std::size_t cnt = 0;
                for (int o : orders_)
                    if (pk % o == 0) ++cnt;
                int lg = 0;
                for (std::size_t c = cnt; c > 1; c /= static_cast<std::size_t>(pp.prime)) ++lg;
                log_counts.push_back(lg);
            }
            // number of cyclic factors of exponent >= k is log_counts[k] - log_counts[k-1]
            std::vector<Int> exps;
            for (int k = 1; k <= pp.exponent; ++k) {
                int at_least_k = log_counts[k] - log_counts[k - 1];
                int at_least_next = k < pp.exponent ? log_counts[k + 1] - log_counts[k] : 0;
                for (int t = 0; t < at_least_k - at_least_next; ++t) {
                    Int q = 1;
                    for (int e = 0; e < k; ++e) q *= pp.prime;
                    exps.push_back(q);
                }
            }
            std::sort(exps.rbegin(), exps.rend());
            per_prime.push_back(exps);
        }
        std::size_t width = 0;
        for (const auto& v : per_prime) width = std::max(width, v.size());
        factors.assign(width, 1);
        for (const auto& v : per_prime)
            for (std::size_t i = 0; i < v.size(); ++i) factors[i] *= v[i];
        std::reverse(factors.begin(), factors.end());
        return factors;
    }

    /// Human-readable structure such as "Z/2 x Z/4" or "1".
    std::string structure() const {
        auto f = invariant_factors();
        if (f.empty()) return "1";
        std::string s;
        for (std::size_t i = 0; i < f.size(); ++i) s += (i ? " x Z/" : "Z/") + std::to_string(f[i]);
        return s;
    }

private:
    Int d_;
    std::vector<FormClass> elements_;
    std::map<Form, std::size_t> index_;
    std::vector<std::vector<std::size_t>> table_;
    std::size_t identity_ = 0;
    std::vector<int> orders_;
    std::vector<int> genus_;
    int genus_count_ = 0;
};

inline ClassGroup class_group(Int d) { return ClassGroup(d); }

inline std::vector<FormClass> ambiguous_classes(const ClassGroup& g) {
    std::vector<FormClass> out;
    for (std::size_t i = 0; i < g.order(); ++i)
        if (g.is_ambiguous(i)) out.push_back(g.element(i));
    return out;
}

inline int genus_of(const FormClass& x, const ClassGroup& g) { return g.genus(g.index_of(x)); }

inline bool has_order_4_element(const ClassGroup& g) {
    return std::any_of(g.orders().begin(), g.orders().end(), [](int o) { return o == 4; });
}

}  // namespace qfiso
