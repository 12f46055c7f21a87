#pragma once

// Isometry-invariant canonical Gram matrix for lattices of rank <= 4.
//
// Among all bases of L, take the ones whose diagonal (Q(v1), ..., Q(vn)) is
// lexicographically least (for rank <= 4 these are the Minkowski-reduced
// bases), then the least off-diagonal sequence a12, a13, a23, a14, a24, a34.
// Two lattices are isometric iff their canonical Grams agree.

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "lattice.hpp"

namespace qfiso {

namespace detail {

/// gcd of the maximal minors of the n x k matrix with the given columns;
/// 1 iff the columns extend to a basis of Z^n.
inline Int minor_gcd(const std::vector<const Vector*>& cols, int n) {
    const int k = static_cast<int>(cols.size());
    Int g = 0;
    std::vector<int> rows(k);
    // iterate over k-subsets of {0..n-1}
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + k, true);
    do {
        int r = 0;
        for (int i = 0; i < n; ++i)
            if (pick[i]) rows[r++] = i;
        IntMatrix m(k, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) m(i, j) = (*cols[j])[rows[i]];
        g = gcd(g, checked::narrow(determinant(m), "minor_gcd"));
        if (g == 1) return 1;
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return g;
}

}  // namespace detail

inline IntMatrix canonical_gram(const Lattice& input) {
    const int n = input.rank();
    // Work from an LLL basis so the starting norm bound is small.
    const Lattice l = sublattice(input, lll_reduce_gram(input.doubled()));
    Int bound = 0;
    for (int i = 0; i < n; ++i) bound = std::max(bound, l.doubled()(i, i) / 2);
    for (int attempt = 0; attempt < 8; ++attempt, bound *= 2) {
        std::vector<Vector> vecs = vectors_up_to_norm(l, bound);
        std::vector<Int> norms;
        std::vector<std::size_t> order;
        for (std::size_t i = 0; i < vecs.size(); ++i)
            if (std::any_of(vecs[i].begin(), vecs[i].end(), [](Int c) { return c != 0; })) order.push_back(i);
        norms.resize(vecs.size());
        for (std::size_t i = 0; i < vecs.size(); ++i) norms[i] = l.norm(vecs[i]);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return norms[x] < norms[y]; });

        // 2M v for each vector, so entries of the Gram of a basis are dot products.
        std::vector<Vector> mv(vecs.size(), Vector(n, 0));
        for (std::size_t i = 0; i < vecs.size(); ++i)
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < n; ++c) mv[i][r] = checked::add(mv[i][r], checked::mul(l.doubled()(r, c), vecs[i][c]));
        auto dot = [&](std::size_t i, std::size_t j) {
            Int s = 0;
            for (int r = 0; r < n; ++r) s = checked::add(s, checked::mul(vecs[i][r], mv[j][r]));
            return s;
        };

        // Greedy choices of shortest primitive extensions all give the same
        // diagonal (the successive minima, rank <= 4), so ties can be cut
        // level by level on the off-diagonal entries against the prefix; this
        // follows the column order of the key.
        std::vector<std::vector<std::size_t>> prefixes{{}};
        bool complete = true;
        for (int level = 0; level < n && complete; ++level) {
            std::vector<Int> best;
            std::vector<std::vector<std::size_t>> next;
            for (const auto& pre : prefixes) {
                std::vector<const Vector*> cols;
                for (auto idx : pre) cols.push_back(&vecs[idx]);
                cols.push_back(nullptr);
                for (std::size_t idx : order) {
                    if (!best.empty() && norms[idx] > best[0]) break;
                    // Global sign: the first vector may be taken with a positive leading entry.
                    if (level == 0) {
                        auto nz = std::find_if(vecs[idx].begin(), vecs[idx].end(), [](Int c) { return c != 0; });
                        if (*nz < 0) continue;
                    }
                    std::vector<Int> key{norms[idx]};
                    for (auto p : pre) key.push_back(dot(p, idx));
                    if (!best.empty() && key > best) continue;
                    cols.back() = &vecs[idx];
                    if (detail::minor_gcd(cols, n) != 1) continue;
                    if (best.empty() || key < best) {
                        best = key;
                        next.clear();
                    }
                    auto ext = pre;
                    ext.push_back(idx);
                    next.push_back(std::move(ext));
                }
            }
            if (next.empty()) complete = false;
            prefixes = std::move(next);
        }
        if (!complete) continue;
        IntMatrix b(n, n);
        for (int j = 0; j < n; ++j) b.set_col(j, vecs[prefixes.front()[j]]);
        return congruent(l.doubled(), b);
    }
    throw std::runtime_error("canonical_gram: failed to complete a basis");
}

inline bool isometric(const Lattice& a, const Lattice& b) {
    return a.rank() == b.rank() && a.discriminant() == b.discriminant() && canonical_gram(a) == canonical_gram(b);
}

}  // namespace qfiso
