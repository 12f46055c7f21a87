#pragma once

// Positive definite Z-lattices of rank <= 4 given by Gram matrices with
// integral diagonal and half-integral off-diagonal entries.
//
// Internally a lattice stores its doubled Gram matrix 2M, which is an integer
// matrix with even diagonal. Q(v) = v^t (2M) v / 2 and 2B(v, w) = v^t (2M) w
// are then integers.

#include <functional>
#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "arith.hpp"
#include "enumerate.hpp"
#include "form.hpp"
#include "intmat.hpp"
#include "rational.hpp"

namespace qfiso {

using Vector = std::vector<Int>;

class Lattice {
public:
    static constexpr int kMaxRank = 4;

    Lattice() = default;

    /// From the doubled Gram matrix 2M.
    static Lattice from_doubled(const IntMatrix& twice) { return Lattice(twice); }

    /// From an integral Gram matrix.
    static Lattice from_gram(const IntMatrix& gram) {
        IntMatrix t(gram.rows(), gram.cols());
        for (int i = 0; i < gram.rows(); ++i)
            for (int j = 0; j < gram.cols(); ++j) t(i, j) = checked::mul(Int(2), gram(i, j));
        return Lattice(t);
    }

    /// From exact rational entries; each must be a multiple of 1/2.
    static Lattice from_rational(const std::vector<std::vector<Rational>>& gram) {
        const int n = static_cast<int>(gram.size());
        IntMatrix t(n, n);
        for (int i = 0; i < n; ++i) {
            if (static_cast<int>(gram[i].size()) != n) throw std::invalid_argument("Gram matrix is not square");
            for (int j = 0; j < n; ++j) {
                Rational d = gram[i][j] * Rational(2);
                if (!d.is_integer()) throw std::invalid_argument("Gram entry " + gram[i][j].str() + " is not half-integral");
                t(i, j) = d.num();
            }
        }
        return Lattice(t);
    }

    int rank() const { return twice_.rows(); }
    const IntMatrix& doubled() const { return twice_; }
    Rational gram(int i, int j) const { return Rational(twice_(i, j), 2); }

    /// Q(v).
    Int norm(const Vector& v) const { return checked::narrow(quadratic(v, v) / 2, "Lattice::norm"); }
    /// 2B(v, w).
    Int twice_inner(const Vector& v, const Vector& w) const { return checked::narrow(quadratic(v, w), "Lattice::twice_inner"); }

    /// dL = det(M), exact.
    Rational discriminant() const {
        Wide d = determinant(twice_);
        Int denom = Int(1) << rank();
        Wide g = d;
        Int dd = denom;
        while (dd > 1 && g % 2 == 0) {
            g /= 2;
            dd /= 2;
        }
        return Rational(checked::narrow(g, "discriminant"), dd);
    }

    bool is_integral() const {
        for (int i = 0; i < rank(); ++i)
            for (int j = 0; j < rank(); ++j)
                if (twice_(i, j) % 2 != 0) return false;
        return true;
    }

    /// Classical discriminant D = -4 d of a binary lattice.
    Int binary_discriminant() const {
        if (rank() != 2) throw std::invalid_argument("binary_discriminant requires rank 2");
        return checked::narrow(-determinant(twice_), "binary_discriminant");
    }

    bool operator==(const Lattice&) const = default;

private:
    explicit Lattice(const IntMatrix& twice) : twice_(twice) { validate(); }

    Wide quadratic(const Vector& v, const Vector& w) const {
        if (static_cast<int>(v.size()) != rank() || static_cast<int>(w.size()) != rank())
            throw std::invalid_argument("vector length does not match lattice rank");
        Wide s = 0;
        for (int i = 0; i < rank(); ++i)
            for (int j = 0; j < rank(); ++j)
                s = checked::add(s, checked::mul(Wide(twice_(i, j)), checked::mul(Wide(v[i]), Wide(w[j]))));
        return s;
    }

    void validate() const {
        const int n = twice_.rows();
        if (n < 1 || n > kMaxRank || twice_.cols() != n) throw std::invalid_argument("lattice rank must be between 1 and 4");
        for (int i = 0; i < n; ++i) {
            if (twice_(i, i) % 2 != 0) throw std::invalid_argument("Gram diagonal must be integral");
            for (int j = 0; j < n; ++j) {
                if (twice_(i, j) != twice_(j, i)) throw std::invalid_argument("Gram matrix must be symmetric");
                if (n >= 3 && twice_(i, j) % 2 != 0)
                    throw std::invalid_argument("Gram entries of rank >= 3 lattices must be integral");
            }
        }
        for (int k = 1; k <= n; ++k)
            if (determinant(twice_.columns(0, k).transpose().columns(0, k)) <= 0)
                throw std::invalid_argument("Gram matrix is not positive definite");
    }

    IntMatrix twice_;
};

/// A representation witness T with T^t M T = target Gram.
struct Embedding {
    IntMatrix t;
    bool operator==(const Embedding&) const = default;
};

inline bool is_embedding(const Lattice& ambient, const Lattice& target, const IntMatrix& t) {
    if (t.rows() != ambient.rank() || t.cols() != target.rank()) return false;
    return congruent(ambient.doubled(), t) == target.doubled();
}

/// Lattice with Gram B^t M B, for a basis matrix B given in L-coordinates.
inline Lattice sublattice(const Lattice& l, const IntMatrix& basis) {
    return Lattice::from_doubled(congruent(l.doubled(), basis));
}

/// Generator s of the norm ideal: gcd of all values Q(v).
inline Int norm_ideal(const Lattice& l) {
    Int g = 0;
    const auto& t = l.doubled();
    for (int i = 0; i < l.rank(); ++i) {
        g = gcd(g, t(i, i) / 2);
        for (int j = i + 1; j < l.rank(); ++j) g = gcd(g, t(i, j));
    }
    return g;
}

/// Gram matrix multiplied by an exact rational factor.
inline Lattice scale(const Lattice& l, const Rational& factor) {
    const int n = l.rank();
    IntMatrix t(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Rational v = Rational(l.doubled()(i, j)) * factor;
            if (!v.is_integer()) throw std::invalid_argument("scaled Gram is not half-integral");
            t(i, j) = v.num();
        }
    return Lattice::from_doubled(t);
}

inline Form binary_form_of(const Lattice& l) {
    if (l.rank() != 2) throw std::invalid_argument("binary_form_of requires a binary lattice");
    const auto& t = l.doubled();
    return {t(0, 0) / 2, t(0, 1), t(1, 1) / 2};
}

inline Lattice lattice_of(const Form& f) {
    return Lattice::from_doubled(IntMatrix{{checked::mul(Int(2), f.a), f.b}, {f.b, checked::mul(Int(2), f.c)}});
}

struct Sublattice {
    Lattice lattice;
    IntMatrix basis;  // columns in coordinates of the ambient lattice
};

/// The p + 1 sublattices of index p of a binary lattice: Z px + Z y and
/// Z (x + u y) + Z py for 0 <= u < p.
inline std::vector<Sublattice> index_p_sublattices(const Lattice& l, Int p) {
    if (l.rank() != 2) throw std::invalid_argument("index_p_sublattices requires a binary lattice");
    if (!is_prime(p)) throw std::invalid_argument("index_p_sublattices requires a prime index");
    std::vector<Sublattice> out;
    IntMatrix first{{p, 0}, {0, 1}};
    out.push_back({sublattice(l, first), first});
    for (Int u = 0; u < p; ++u) {
        IntMatrix b{{1, 0}, {u, p}};
        out.push_back({sublattice(l, b), b});
    }
    return out;
}

/// Thrown when a prime does not yield exactly two sublattices of norm in psZ.
class NotSplitError : public std::invalid_argument {
public:
    NotSplitError(Int p, std::size_t count)
        : std::invalid_argument("prime " + std::to_string(p) + " is not split: " + std::to_string(count) +
                                " index-p sublattices have norm in pZ"),
          count_(count) {}
    std::size_t count() const { return count_; }

private:
    std::size_t count_;
};

/// Roots u mod p of a + b u + c u^2 (the lines x + u y that are isotropic mod p),
/// plus the line y itself (returned as u = p) when c = 0 mod p.
inline std::vector<Int> isotropic_lines_mod_p(const Form& f, Int p) {
    std::vector<Int> roots;
    for (Int u = 0; u < p; ++u)
        if (mod(checked::narrow(f(1, u) % p), p) == 0) roots.push_back(u);
    if (mod(f.c, p) == 0) roots.push_back(p);
    return roots;
}

/// The two index-p sublattices l(p,1), l(p,2) whose norm lies in p s Z, where
/// n(l) = sZ. Requires (D/p) = 1 with D = D_l / s^2.
inline std::pair<Sublattice, Sublattice> norm_p_sublattices(const Lattice& l, Int p) {
    const Int s = norm_ideal(l);
    const Int target = checked::mul(p, s);
    const Int d = l.binary_discriminant() / (s * s);
    std::vector<Sublattice> hits;
    if (p % 2 == 1 && d % p != 0) {
        // Odd p prime to D: sublattices Z v + p l for isotropic lines v mod p.
        Form f = binary_form_of(scale(l, Rational(1, s)));
        for (Int u : isotropic_lines_mod_p(f, p)) {
            IntMatrix b = u == p ? IntMatrix{{p, 0}, {0, 1}} : IntMatrix{{1, 0}, {u, p}};
            hits.push_back({sublattice(l, b), b});
        }
    } else {
        for (auto& sub : index_p_sublattices(l, p))
            if (norm_ideal(sub.lattice) % target == 0) hits.push_back(std::move(sub));
    }
    if (hits.size() != 2 || kronecker(d, p) != 1) throw NotSplitError(p, hits.size());
    return {hits[0], hits[1]};
}

/// Enumerates z with z^t A z <= bound (AtMost) or == bound (Equal) after an
/// LLL change of basis; results are returned in original coordinates.
inline std::vector<Vector> enumerate_form(const IntMatrix& a, Int bound, QuadricMode mode) {
    const int n = a.rows();
    IntMatrix u = lll_reduce_gram(a);
    IntMatrix reduced = congruent(a, u);
    QuadricEnumerator e(reduced, std::vector<Int>(n, 0), -Wide(bound));
    std::vector<Vector> out;
    e.enumerate(mode, [&](const std::vector<Int>& z) {
        Vector v(n, 0);
        for (int i = 0; i < n; ++i) {
            Wide s = 0;
            for (int j = 0; j < n; ++j) s += Wide(u(i, j)) * z[j];
            v[i] = checked::narrow(s, "enumerate_form");
        }
        out.push_back(std::move(v));
        return true;
    });
    std::sort(out.begin(), out.end());
    return out;
}

/// All v with Q(v) = m, sorted lexicographically. Complete and exact.
inline std::vector<Vector> vectors_with_norm(const Lattice& l, Int m) {
    if (m < 0) throw std::invalid_argument("vectors_with_norm: negative norm");
    return enumerate_form(l.doubled(), checked::mul(Int(2), m), QuadricMode::Equal);
}

/// All v with Q(v) <= m, sorted lexicographically.
inline std::vector<Vector> vectors_up_to_norm(const Lattice& l, Int m) {
    if (m < 0) throw std::invalid_argument("vectors_up_to_norm: negative norm");
    return enumerate_form(l.doubled(), checked::mul(Int(2), m), QuadricMode::AtMost);
}

/// Searches for representations of lattices by a fixed ambient lattice.
/// Vectors of a given norm are cached, so reuse one Embedder per ambient
/// lattice when testing many targets.
class Embedder {
public:
    explicit Embedder(Lattice ambient) : ambient_(std::move(ambient)) {}

    const Lattice& ambient() const { return ambient_; }

    /// First representation found in the canonical search order, or none.
    std::optional<Embedding> find(const Lattice& target) {
        std::optional<Embedding> out;
        search(target, [&](const IntMatrix& t) {
            out = Embedding{t};
            return true;
        });
        return out;
    }

    /// Every T with T^t M T = Gram(target). Finite since both are definite.
    std::vector<IntMatrix> all(const Lattice& target) {
        std::vector<IntMatrix> out;
        search(target, [&](const IntMatrix& t) {
            IntMatrix neg = t;
            for (int i = 0; i < neg.rows(); ++i)
                for (int j = 0; j < neg.cols(); ++j) neg(i, j) = -neg(i, j);
            out.push_back(t);
            out.push_back(std::move(neg));
            return false;
        });
        return out;
    }

    /// The representation whose entries, read column by column, are
    /// lexicographically least.
    std::optional<Embedding> least(const Lattice& target) {
        auto ts = all(target);
        if (ts.empty()) return std::nullopt;
        return Embedding{*std::min_element(ts.begin(), ts.end(), column_major_less)};
    }

    static bool column_major_less(const IntMatrix& x, const IntMatrix& y) {
        for (int j = 0; j < x.cols(); ++j)
            for (int i = 0; i < x.rows(); ++i)
                if (x(i, j) != y(i, j)) return x(i, j) < y(i, j);
        return false;
    }

    const std::vector<Vector>& vectors_of_norm(Int m) {
        auto it = cache_.find(m);
        if (it != cache_.end()) return it->second;
        auto vs = vectors_with_norm(ambient_, m);
        // v and -v are interchangeable for the first column.
        std::vector<Vector> half;
        for (auto& x : vs) {
            auto nz = std::find_if(x.begin(), x.end(), [](Int c) { return c != 0; });
            if (nz == x.end() || *nz > 0) half.push_back(std::move(x));
        }
        return cache_.emplace(m, std::move(half)).first->second;
    }

private:
    using Visit = std::function<bool(const IntMatrix&)>;  // true stops the search

    // Calls visit(T) for the target's own basis, one of each pair +-T.
    void search(const Lattice& target, const Visit& visit) {
        const int n = ambient_.rank(), m = target.rank();
        if (m > n) return;
        IntMatrix v = lll_reduce_gram(target.doubled());
        IntMatrix goal = congruent(target.doubled(), v);
        IntMatrix vinv = unimodular_inverse(v);
        IntMatrix cols(n, m);
        extend(goal, cols, 0, [&](const IntMatrix& c) {
            IntMatrix t = c * vinv;
            if (!is_embedding(ambient_, target, t)) throw std::logic_error("Embedder produced an invalid witness");
            return visit(t);
        });
    }

    bool extend(const IntMatrix& goal, IntMatrix& cols, int j, const Visit& done) {
        const int n = ambient_.rank(), m = goal.rows();
        if (j == m) return done(cols);
        const IntMatrix& a = ambient_.doubled();
        if (j == 0) {
            for (const auto& v : vectors_of_norm(goal(0, 0) / 2)) {
                cols.set_col(0, v);
                if (extend(goal, cols, 1, done)) return true;
            }
            return false;
        }
        // Linear conditions 2B(col_i, w) = goal(i, j) for i < j.
        IntMatrix c(j, n);
        std::vector<Int> rhs(j);
        for (int i = 0; i < j; ++i) {
            auto ci = cols.col(i);
            for (int k = 0; k < n; ++k) {
                Wide s = 0;
                for (int r = 0; r < n; ++r) s += Wide(ci[r]) * a(r, k);
                c(i, k) = checked::narrow(s, "Embedder");
            }
            rhs[i] = goal(i, j);
        }
        auto affine = solve_integer(c, rhs);
        if (!affine) return false;
        const auto& w0 = affine->particular;
        const int k = affine->kernel.cols();
        if (k == 0) {
            if (ambient_.twice_inner(w0, w0) != goal(j, j)) return false;
            cols.set_col(j, w0);
            return extend(goal, cols, j + 1, done);
        }
        IntMatrix kern = affine->kernel;
        IntMatrix ak = congruent(a, kern);
        IntMatrix u = lll_reduce_gram(ak);
        kern = kern * u;
        ak = congruent(a, kern);
        std::vector<Int> h(k);
        for (int i = 0; i < k; ++i) {
            Wide s = 0;
            for (int r = 0; r < n; ++r)
                for (int q = 0; q < n; ++q) s += Wide(kern(r, i)) * a(r, q) * w0[q];
            h[i] = checked::narrow(s, "Embedder");
        }
        Wide k0 = Wide(ambient_.twice_inner(w0, w0)) - goal(j, j);
        QuadricEnumerator e(ak, h, k0);
        bool found = false;
        e.enumerate(QuadricMode::Equal, [&](const std::vector<Int>& z) {
            Vector w(w0);
            for (int r = 0; r < n; ++r) {
                Wide s = w[r];
                for (int i = 0; i < k; ++i) s += Wide(kern(r, i)) * z[i];
                w[r] = checked::narrow(s, "Embedder");
            }
            cols.set_col(j, w);
            if (extend(goal, cols, j + 1, done)) {
                found = true;
                return false;
            }
            return true;
        });
        return found;
    }

    Lattice ambient_;
    std::map<Int, std::vector<Vector>> cache_;
};

inline std::optional<Embedding> represents_lattice(const Lattice& ambient, const Lattice& target) {
    Embedder e(ambient);
    return e.find(target);
}

struct Saturation {
    IntMatrix basis;  // columns spanning Q(S) intersected with L
    Lattice lattice;
    Int index = 1;    // [saturation : S]
};

/// Q-span of the columns of s intersected with L, and the index of s in it.
inline Saturation saturate(const Lattice& l, const IntMatrix& s) {
    const int n = l.rank(), k = s.cols();
    if (s.rows() != n) throw std::invalid_argument("saturate: generator matrix has wrong row count");
    if (k == 0 || integer_kernel(s).cols() != 0) throw std::invalid_argument("saturate: generators are linearly dependent");
    IntMatrix left_null = integer_kernel(s.transpose());  // n x (n-k)
    IntMatrix sat = integer_kernel(left_null.transpose()); // n x k
    IntMatrix u = lll_reduce_gram(congruent(l.doubled(), sat));
    sat = sat * u;
    IntMatrix coords(k, k);
    for (int j = 0; j < k; ++j) {
        auto sol = solve_integer(sat, s.col(j));
        if (!sol || sol->kernel.cols() != 0) throw std::logic_error("saturate: generator outside its saturation");
        for (int i = 0; i < k; ++i) coords(i, j) = sol->particular[i];
    }
    Wide det = determinant(coords);
    return {sat, sublattice(l, sat), checked::narrow(abs_wide(det), "saturate")};
}

enum class SearchOutcome { Found, NotFound, Unknown };

struct NormPSublatticeResult {
    SearchOutcome outcome = SearchOutcome::Unknown;
    std::optional<Saturation> witness;  // primitive binary sublattice with norm in pZ
    Int norm_bound = 0;
};

/// Searches for a primitive binary sublattice of L with norm in pZ among
/// pairs of vectors of norm <= bound (default 4 p max diag). For binary L the
/// answer is decided exactly; otherwise an exhausted search is Unknown.
inline NormPSublatticeResult has_norm_p_binary_sublattice(const Lattice& l, Int p, Int bound = 0) {
    if (!is_prime(p)) throw std::invalid_argument("has_norm_p_binary_sublattice requires a prime");
    if (l.rank() < 2) throw std::invalid_argument("has_norm_p_binary_sublattice requires rank >= 2");
    NormPSublatticeResult r;
    if (l.rank() == 2) {
        r.outcome = norm_ideal(l) % p == 0 ? SearchOutcome::Found : SearchOutcome::NotFound;
        if (r.outcome == SearchOutcome::Found) r.witness = saturate(l, IntMatrix::identity(2));
        return r;
    }
    if (bound == 0) {
        Int maxdiag = 0;
        for (int i = 0; i < l.rank(); ++i) maxdiag = std::max(maxdiag, l.doubled()(i, i) / 2);
        bound = checked::mul(checked::mul(Int(4), p), maxdiag);
    }
    r.norm_bound = bound;
    std::vector<Vector> pool;
    for (auto& v : vectors_up_to_norm(l, bound)) {
        auto nz = std::find_if(v.begin(), v.end(), [](Int c) { return c != 0; });
        if (nz == v.end() || *nz < 0) continue;
        if (l.norm(v) % p == 0) pool.push_back(std::move(v));
    }
    std::stable_sort(pool.begin(), pool.end(), [&](const Vector& x, const Vector& y) { return l.norm(x) < l.norm(y); });
    const int n = l.rank();
    for (std::size_t j = 0; j < pool.size(); ++j)
        for (std::size_t i = 0; i < j; ++i) {
            if (l.twice_inner(pool[i], pool[j]) % p != 0) continue;
            IntMatrix s(n, 2);
            s.set_col(0, pool[i]);
            s.set_col(1, pool[j]);
            if (integer_kernel(s).cols() != 0) continue;
            Saturation sat = saturate(l, s);
            if (norm_ideal(sat.lattice) % p != 0) continue;
            r.outcome = SearchOutcome::Found;
            r.witness = sat;
            return r;
        }
    r.outcome = SearchOutcome::Unknown;
    return r;
}

}  // namespace qfiso
