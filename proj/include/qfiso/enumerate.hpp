#pragma once

// Exact enumeration of integer points on (or inside) a positive definite
// inhomogeneous quadric
//
//     F(z) = z^t A z + 2 h^t z + k0,     find z with F(z) = 0  (or F(z) <= 0).
//
// Variables are eliminated one at a time by completing the square on the
// bordered matrix [[A, h], [h^t, k0]] with fraction-free (Bareiss) Schur
// complements. Writing F_i for the form left after eliminating z_0..z_{i-1}
// and g_i for its leading coefficient,
//
//     g_i F_i(z_i, ...) = (g_i z_i + b_i . (z_{i+1}, ..., 1))^2 + g_{i-1} F_{i+1}(...)
//
// so every coordinate bound is an integer square root and no rounding is
// ever involved.

#include <stdexcept>
#include <vector>

#include "checked.hpp"
#include "intmat.hpp"

namespace qfiso {

enum class QuadricMode { Equal, AtMost };

class QuadricEnumerator {
public:
    QuadricEnumerator(const IntMatrix& a, const std::vector<Int>& h, Wide k0) : dim_(a.rows()) {
        if (a.rows() != a.cols() || static_cast<int>(h.size()) != dim_)
            throw std::invalid_argument("QuadricEnumerator: dimension mismatch");
        const int n = dim_ + 1;
        std::vector<Wide> cur(std::size_t(n) * n);
        for (int i = 0; i < dim_; ++i) {
            for (int j = 0; j < dim_; ++j) cur[i * n + j] = a(i, j);
            cur[i * n + dim_] = cur[dim_ * n + i] = h[i];
        }
        cur[dim_ * n + dim_] = k0;
        Wide prev = 1;
        for (int level = 0; level < dim_; ++level) {
            const int m = n - level;  // size of current bordered matrix
            Wide g = cur[0];
            if (g <= 0) throw std::invalid_argument("QuadricEnumerator: matrix is not positive definite");
            lead_.push_back(g);
            prev_lead_.push_back(prev);
            rows_.emplace_back(cur.begin() + 1, cur.begin() + m);
            std::vector<Wide> next(std::size_t(m - 1) * (m - 1));
            for (int i = 1; i < m; ++i)
                for (int j = 1; j < m; ++j) {
                    Wide v = checked::sub(checked::mul(g, cur[i * m + j]), checked::mul(cur[i * m], cur[j]));
                    next[(i - 1) * (m - 1) + (j - 1)] = v / prev;
                }
            prev = g;
            cur = std::move(next);
        }
        constant_ = cur[0];
    }

    int dimension() const { return dim_; }

    /// Calls visit(z) for every solution; visit returns false to stop early.
    /// Returns false iff stopped early.
    template <typename Visitor>
    bool enumerate(QuadricMode mode, Visitor&& visit) const {
        std::vector<Int> z(dim_, 0);
        if (dim_ == 0) {
            bool ok = mode == QuadricMode::Equal ? constant_ == 0 : constant_ <= 0;
            return ok ? visit(z) : true;
        }
        if (constant_ > 0) return true;
        return descend(dim_ - 1, constant_, z, mode, visit);
    }

private:
    template <typename Visitor>
    bool descend(int level, Wide next_value, std::vector<Int>& z, QuadricMode mode, Visitor& visit) const {
        const Wide g = lead_[level];
        const Wide outer = prev_lead_[level];
        const Wide r = checked::mul(-outer, next_value, "enumerate");
        if (r < 0) return true;
        const auto& row = rows_[level];
        Wide t = row.back();
        for (int j = level + 1; j < dim_; ++j) t = checked::add(t, checked::mul(row[j - level - 1], Wide(z[j])), "enumerate");
        Wide s = isqrt(r);
        if (level == 0 && mode == QuadricMode::Equal) {
            if (s * s != r) return true;
            for (Wide root : {-s, s}) {
                Wide num = root - t;
                if (num % g == 0) {
                    z[0] = checked::narrow(num / g, "enumerate");
                    if (!visit(z)) return false;
                }
                if (s == 0) break;
            }
            return true;
        }
        const Wide lo = ceil_div(-s - t, g), hi = floor_div(s - t, g);
        for (Wide x = lo; x <= hi; ++x) {
            z[level] = checked::narrow(x, "enumerate");
            if (level == 0) {
                if (!visit(z)) return false;
                continue;
            }
            Wide u = checked::add(checked::mul(g, x), t, "enumerate");
            Wide value = checked::sub(checked::mul(u, u), r, "enumerate") / g;
            if (!descend(level - 1, value, z, mode, visit)) return false;
        }
        return true;
    }

    int dim_;
    std::vector<Wide> lead_;       // g_i
    std::vector<Wide> prev_lead_;  // g_{i-1}, with g_{-1} = 1
    std::vector<std::vector<Wide>> rows_;
    Wide constant_ = 0;
};

}  // namespace qfiso
