#pragma once

#include <ostream>
#include <stdexcept>
#include <string>

#include "arith.hpp"

namespace qfiso {

/// Exact rational number with positive denominator, always in lowest terms.
class Rational {
public:
    Rational(Int n = 0) : num_(n), den_(1) {}  // NOLINT: implicit from integers is intended
    Rational(Int n, Int d) : num_(n), den_(d) {
        if (d == 0) throw std::invalid_argument("Rational: zero denominator");
        normalize();
    }

    Int num() const { return num_; }
    Int den() const { return den_; }
    bool is_integer() const { return den_ == 1; }

    friend Rational operator*(const Rational& x, const Rational& y) {
        Int g1 = gcd(x.num_, y.den_), g2 = gcd(y.num_, x.den_);
        if (g1 == 0) g1 = 1;
        if (g2 == 0) g2 = 1;
        return Rational(checked::mul(x.num_ / g1, y.num_ / g2, "Rational*"),
                        checked::mul(x.den_ / g2, y.den_ / g1, "Rational*"));
    }
    friend Rational operator/(const Rational& x, const Rational& y) {
        if (y.num_ == 0) throw std::domain_error("Rational: division by zero");
        return x * Rational(y.den_, y.num_);
    }
    friend Rational operator+(const Rational& x, const Rational& y) {
        Wide n = Wide(x.num_) * y.den_ + Wide(y.num_) * x.den_;
        Wide d = Wide(x.den_) * y.den_;
        return reduce_wide(n, d);
    }
    friend Rational operator-(const Rational& x) { return Rational(checked::sub(Int(0), x.num_), x.den_); }
    friend Rational operator-(const Rational& x, const Rational& y) { return x + (-y); }

    bool operator==(const Rational&) const = default;
    friend bool operator<(const Rational& x, const Rational& y) {
        return Wide(x.num_) * y.den_ < Wide(y.num_) * x.den_;
    }

    std::string str() const { return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_); }

    /// Parses "n" or "n/d".
    static Rational parse(const std::string& s) {
        auto slash = s.find('/');
        std::size_t used = 0;
        try {
            if (slash == std::string::npos) {
                Int n = std::stoll(s, &used);
                if (used != s.size()) throw std::invalid_argument(s);
                return Rational(n);
            }
            std::string a = s.substr(0, slash), b = s.substr(slash + 1);
            std::size_t ua = 0, ub = 0;
            Int n = std::stoll(a, &ua), d = std::stoll(b, &ub);
            if (ua != a.size() || ub != b.size()) throw std::invalid_argument(s);
            return Rational(n, d);
        } catch (const std::logic_error&) {
            throw std::invalid_argument("not a rational number: '" + s + "'");
        }
    }

private:
    static Rational reduce_wide(Wide n, Wide d) {
        Wide a = abs_wide(n), b = abs_wide(d);
        while (b != 0) {
            Wide t = a % b;
            a = b;
            b = t;
        }
        if (a == 0) a = 1;
        return Rational(checked::narrow(n / a, "Rational"), checked::narrow(d / a, "Rational"));
    }

    void normalize() {
        if (den_ < 0) {
            num_ = checked::sub(Int(0), num_);
            den_ = checked::sub(Int(0), den_);
        }
        Int g = gcd(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    Int num_;
    Int den_;
};

inline std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace qfiso
