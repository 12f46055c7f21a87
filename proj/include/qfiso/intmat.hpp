#pragma once

// Small dense integer matrices: products, exact determinants, integer
// kernels and affine solution sets, unimodular inverses and Gram-matrix LLL.

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "arith.hpp"
#include "checked.hpp"

namespace qfiso {

class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(std::size_t(rows) * cols, 0) {}
    IntMatrix(std::initializer_list<std::initializer_list<Int>> rows) {
        rows_ = static_cast<int>(rows.size());
        cols_ = rows_ == 0 ? 0 : static_cast<int>(rows.begin()->size());
        for (const auto& r : rows) {
            if (static_cast<int>(r.size()) != cols_) throw std::invalid_argument("ragged matrix literal");
            data_.insert(data_.end(), r.begin(), r.end());
        }
    }

    static IntMatrix identity(int n) {
        IntMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static IntMatrix column(const std::vector<Int>& v) {
        IntMatrix m(static_cast<int>(v.size()), 1);
        for (int i = 0; i < m.rows_; ++i) m(i, 0) = v[i];
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Int& operator()(int i, int j) { return data_[std::size_t(i) * cols_ + j]; }
    Int operator()(int i, int j) const { return data_[std::size_t(i) * cols_ + j]; }

    std::vector<Int> col(int j) const {
        std::vector<Int> v(rows_);
        for (int i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
        return v;
    }

    void set_col(int j, const std::vector<Int>& v) {
        for (int i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
    }

    IntMatrix transpose() const {
        IntMatrix t(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    /// Columns [first, first + count).
    IntMatrix columns(int first, int count) const {
        IntMatrix m(rows_, count);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < count; ++j) m(i, j) = (*this)(i, first + j);
        return m;
    }

    const std::vector<Int>& data() const { return data_; }

    bool operator==(const IntMatrix& o) const = default;
    auto operator<=>(const IntMatrix& o) const {
        if (auto c = rows_ <=> o.rows_; c != 0) return c;
        if (auto c = cols_ <=> o.cols_; c != 0) return c;
        return data_ <=> o.data_;
    }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Int> data_;
};

inline IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix dimension mismatch");
    IntMatrix c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j) {
            Wide s = 0;
            for (int k = 0; k < a.cols(); ++k)
                s = checked::add(s, checked::mul(Wide(a(i, k)), Wide(b(k, j))));
            c(i, j) = checked::narrow(s, "matrix product");
        }
    return c;
}

inline std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
    os << '[';
    for (int i = 0; i < m.rows(); ++i) {
        if (i) os << "; ";
        for (int j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j);
    }
    return os << ']';
}

/// T^t A T.
inline IntMatrix congruent(const IntMatrix& a, const IntMatrix& t) { return t.transpose() * (a * t); }

/// Exact determinant by fraction-free (Bareiss) elimination.
inline Wide determinant(const IntMatrix& m) {
    const int n = m.rows();
    if (n != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
    if (n == 0) return 1;
    std::vector<Wide> a(m.data().begin(), m.data().end());
    auto at = [&](int i, int j) -> Wide& { return a[std::size_t(i) * n + j]; };
    Wide prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (at(k, k) == 0) {
            int swap_row = -1;
            for (int i = k + 1; i < n; ++i)
                if (at(i, k) != 0) {
                    swap_row = i;
                    break;
                }
            if (swap_row < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(at(k, j), at(swap_row, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                Wide v = checked::sub(checked::mul(at(i, j), at(k, k)), checked::mul(at(i, k), at(k, j)));
                at(i, j) = v / prev;
            }
        prev = at(k, k);
    }
    return sign * at(n - 1, n - 1);
}

/// Inverse of a matrix with determinant +-1, via the adjugate.
inline IntMatrix unimodular_inverse(const IntMatrix& m) {
    const int n = m.rows();
    Wide det = determinant(m);
    if (det != 1 && det != -1) throw std::invalid_argument("matrix is not unimodular");
    IntMatrix inv(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            IntMatrix minor(n - 1, n - 1);
            for (int r = 0, rr = 0; r < n; ++r) {
                if (r == j) continue;
                for (int c = 0, cc = 0; c < n; ++c) {
                    if (c == i) continue;
                    minor(rr, cc++) = m(r, c);
                }
                ++rr;
            }
            Wide cof = determinant(minor) * (((i + j) % 2) ? -1 : 1);
            inv(i, j) = checked::narrow(cof * det, "unimodular_inverse");
        }
    return inv;
}

/// Integer solutions of C w = rhs, as w = particular + kernel * z for z in Z^k.
struct AffineLattice {
    std::vector<Int> particular;
    IntMatrix kernel;  // n x k, columns form a Z-basis of {w : C w = 0}
};

namespace detail {

/// Column-reduce C (r x n) to echelon form E = C W with W unimodular.
/// Returns the pivot column for each row (-1 if the row has no pivot).
inline std::vector<int> column_echelon(IntMatrix& e, IntMatrix& w) {
    const int r = e.rows(), n = e.cols();
    w = IntMatrix::identity(n);
    std::vector<int> pivot(r, -1);
    int next = 0;
    auto combine = [&](IntMatrix& m, int k, int j, Int x, Int y, Int u, Int v) {
        // col_k <- x col_k + y col_j ; col_j <- u col_k + v col_j
        for (int i = 0; i < m.rows(); ++i) {
            Int ck = m(i, k), cj = m(i, j);
            m(i, k) = checked::narrow(Wide(x) * ck + Wide(y) * cj, "column_echelon");
            m(i, j) = checked::narrow(Wide(u) * ck + Wide(v) * cj, "column_echelon");
        }
    };
    for (int i = 0; i < r && next < n; ++i) {
        for (int j = next + 1; j < n; ++j) {
            Int a = e(i, next), b = e(i, j);
            if (b == 0) continue;
            Int x, y;
            Int g = xgcd(a, b, x, y);
            Int u = -b / g, v = a / g;
            combine(e, next, j, x, y, u, v);
            combine(w, next, j, x, y, u, v);
        }
        if (e(i, next) == 0) continue;
        if (e(i, next) < 0) {
            for (int k = 0; k < r; ++k) e(k, next) = -e(k, next);
            for (int k = 0; k < n; ++k) w(k, next) = -w(k, next);
        }
        pivot[i] = next++;
    }
    return pivot;
}

}  // namespace detail

inline std::optional<AffineLattice> solve_integer(const IntMatrix& c, const std::vector<Int>& rhs) {
    if (static_cast<int>(rhs.size()) != c.rows()) throw std::invalid_argument("rhs size mismatch");
    IntMatrix e = c, w;
    auto pivot = detail::column_echelon(e, w);
    const int n = c.cols();
    int rank = 0;
    for (int p : pivot)
        if (p >= 0) rank = p + 1;
    std::vector<Int> y(n, 0);
    for (int i = 0; i < c.rows(); ++i) {
        Wide residual = rhs[i];
        for (int j = 0; j < rank; ++j)
            if (j != pivot[i]) residual -= Wide(e(i, j)) * y[j];
        if (pivot[i] < 0) {
            if (residual != 0) return std::nullopt;
            continue;
        }
        Int piv = e(i, pivot[i]);
        if (residual % piv != 0) return std::nullopt;
        y[pivot[i]] = checked::narrow(residual / piv, "solve_integer");
    }
    AffineLattice out;
    out.particular.assign(n, 0);
    for (int i = 0; i < n; ++i) {
        Wide s = 0;
        for (int j = 0; j < rank; ++j) s += Wide(w(i, j)) * y[j];
        out.particular[i] = checked::narrow(s, "solve_integer");
    }
    out.kernel = w.columns(rank, n - rank);
    return out;
}

inline IntMatrix integer_kernel(const IntMatrix& c) {
    return solve_integer(c, std::vector<Int>(c.rows(), 0))->kernel;
}

/// LLL-reduce a positive definite Gram matrix. Returns unimodular U such that
/// U^t A U is (approximately, in the Lovasz sense) reduced. Floating point is
/// used only to choose the transformation; U and the reduced Gram are exact.
inline IntMatrix lll_reduce_gram(const IntMatrix& gram) {
    const int n = gram.rows();
    IntMatrix u = IntMatrix::identity(n);
    if (n <= 1) return u;
    IntMatrix a = gram;
    auto gso = [&](std::vector<std::vector<double>>& mu, std::vector<double>& bstar) {
        mu.assign(n, std::vector<double>(n, 0.0));
        bstar.assign(n, 0.0);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < i; ++j) {
                double s = static_cast<double>(a(i, j));
                for (int k = 0; k < j; ++k) s -= mu[j][k] * mu[i][k] * bstar[k];
                mu[i][j] = s / bstar[j];
            }
            double s = static_cast<double>(a(i, i));
            for (int k = 0; k < i; ++k) s -= mu[i][k] * mu[i][k] * bstar[k];
            bstar[i] = s;
        }
    };
    std::vector<std::vector<double>> mu;
    std::vector<double> bstar;
    int k = 1;
    for (int iter = 0; k < n && iter < 10000; ++iter) {
        gso(mu, bstar);
        for (int j = k - 1; j >= 0; --j) {
            double q = std::round(mu[k][j]);
            if (q == 0.0) continue;
            Int qi = static_cast<Int>(q);
            for (int r = 0; r < n; ++r) u(r, k) = checked::sub(u(r, k), checked::mul(qi, u(r, j)));
            a = congruent(gram, u);
            gso(mu, bstar);
        }
        if (bstar[k] < (0.75 - mu[k][k - 1] * mu[k][k - 1]) * bstar[k - 1]) {
            for (int r = 0; r < n; ++r) std::swap(u(r, k), u(r, k - 1));
            a = congruent(gram, u);
            k = std::max(k - 1, 1);
        } else {
            ++k;
        }
    }
    return u;
}

}  // namespace qfiso
