#pragma once

// Candidates for quaternary isolations of four binary lattices, transcribed
// verbatim (Gram matrices and stated discriminants). The third base lattice is
// printed as the integral Gram (2 1; 1 3), whose discriminant -20 has class
// group Z/2, while the group printed next to it is Z/3, which belongs to the
// half-integral Gram (2 1/2; 1/2 3) of discriminant -23. The printed reading is
// the primary record; the other one ships as a tagged variant.

#include <string>
#include <vector>

#include "lattice.hpp"
#include "rational.hpp"

namespace qfiso {

struct CandidateRecord {
    std::string id;       // "row1.1", ...
    int row = 0;
    int position = 0;     // 1-based position within the row
    Lattice base;
    Lattice candidate;
    Int stated_discriminant = 0;
    std::string printed_group;  // group column as printed
    std::string variant;        // "printed" or "half-integral"
    std::string note;
};

/// Exact Gram matrix as rational entries (for JSON and display).
using RationalGram = std::vector<std::vector<Rational>>;

inline RationalGram gram_of(const Lattice& l) {
    RationalGram g(l.rank(), std::vector<Rational>(l.rank()));
    for (int i = 0; i < l.rank(); ++i)
        for (int j = 0; j < l.rank(); ++j) g[i][j] = l.gram(i, j);
    return g;
}

namespace detail {

struct Table1Row {
    int row;
    IntMatrix base;
    const char* group;
    std::vector<std::pair<IntMatrix, Int>> candidates;
};

inline const std::vector<Table1Row>& table1_literal() {
    static const std::vector<Table1Row> rows = {
        {1,
         {{2, 1}, {1, 2}},
         "{E}",
         {
             {{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 4, 2}, {0, 0, 2, 5}}, 16},
             {{{1, 0, 0, 0}, {0, 2, 0, 1}, {0, 0, 2, 1}, {0, 1, 1, 5}}, 16},
             {{{1, 0, 0, 0}, {0, 2, 1, -1}, {0, 1, 5, 1}, {0, -1, 1, 5}}, 36},
             {{{2, 0, 1, 1}, {0, 3, 0, 0}, {1, 0, 3, 0}, {1, 0, 0, 3}}, 36},
             {{{2, 0, 0, 1}, {0, 2, 0, 1}, {0, 0, 4, 2}, {1, 1, 2, 6}}, 64},
             {{{2, 0, 1, 0}, {0, 3, 1, 1}, {1, 1, 5, 2}, {0, 1, 2, 5}}, 100},
             {{{2, 1, 0, 1}, {1, 3, 1, 1}, {0, 1, 5, -2}, {1, 1, -2, 6}}, 100},
             {{{2, 0, 1, 1}, {0, 4, 2, -2}, {1, 2, 6, 1}, {1, -2, 1, 6}}, 144},
             {{{2, 0, 1, 1}, {0, 6, 1, -1}, {1, 1, 6, 3}, {1, -1, 3, 6}}, 256},
             {{{2, 0, 1, 1}, {0, 6, 3, -1}, {1, 3, 6, 2}, {1, -1, 2, 10}}, 400},
         }},
        {2,
         {{2, 0}, {0, 2}},
         "{E}",
         {
             {{{1, 0, 0, 0}, {0, 2, 0, 1}, {0, 0, 4, 0}, {0, 1, 0, 5}}, 36},
             {{{1, 0, 0, 0}, {0, 2, 0, 1}, {0, 0, 4, 2}, {0, 1, 2, 6}}, 36},
             {{{2, 1, 1, 1}, {1, 4, 0, 1}, {1, 0, 4, 0}, {1, 1, 0, 4}}, 81},
             {{{2, 0, 0, 1}, {0, 4, 0, 2}, {0, 0, 4, 0}, {1, 2, 0, 6}}, 144},
         }},
        {3,
         {{2, 1}, {1, 3}},
         "Z/3",
         {
             {{{1, 0, 0, 0}, {0, 2, 0, 1}, {0, 0, 6, 1}, {0, 1, 1, 6}}, 64},
         }},
        {4,
         {{6, 3}, {3, 8}},
         "Z/4",
         {
             {{{1, 0, 0, 0}, {0, 2, 1, 1}, {0, 1, 3, 0}, {0, 1, 0, 11}}, 52},
             {{{2, 0, 1, 1}, {0, 3, 1, 1}, {1, 1, 4, 2}, {1, 1, 2, 4}}, 52},
             {{{2, 0, 1, 1}, {0, 4, 2, -2}, {1, 2, 4, 0}, {1, -2, 0, 12}}, 208},
             {{{6, 2, 3, 3}, {2, 6, 0, 1}, {3, 0, 10, 5}, {3, 1, 5, 12}}, 2401},
         }},
    };
    return rows;
}

}  // namespace detail

/// The 19 candidates as printed, in table order. With include_variants, the
/// half-integral reading of row 3 is appended.
inline std::vector<CandidateRecord> table1_records(bool include_variants = false) {
    std::vector<CandidateRecord> out;
    for (const auto& row : detail::table1_literal()) {
        int pos = 0;
        for (const auto& [gram, disc] : row.candidates) {
            CandidateRecord r;
            r.row = row.row;
            r.position = ++pos;
            r.id = "row" + std::to_string(row.row) + "." + std::to_string(pos);
            r.base = Lattice::from_gram(row.base);
            r.candidate = Lattice::from_gram(gram);
            r.stated_discriminant = disc;
            r.printed_group = row.group;
            r.variant = "printed";
            if (row.row == 3)
                r.note = "base read as the integral Gram (2 1; 1 3), D = -20, class group Z/2; printed group Z/3 "
                         "matches the half-integral reading instead";
            out.push_back(std::move(r));
        }
    }
    if (include_variants) {
        CandidateRecord v = out[14];
        v.id = "row3.1-half";
        v.base = Lattice::from_rational({{Rational(2), Rational(1, 2)}, {Rational(1, 2), Rational(3)}});
        v.variant = "half-integral";
        v.note = "base read as the half-integral Gram (2 1/2; 1/2 3), D = -23, class group Z/3 as printed; odd-index "
                 "sublattices then have half-integral inner products and cannot lie in an integral lattice";
        out.push_back(std::move(v));
    }
    return out;
}

/// D with D_l = s^2 D, where n(l) = sZ.
inline Int normalized_discriminant(const Lattice& base) {
    const Int s = norm_ideal(base);
    return base.binary_discriminant() / (s * s);
}

}  // namespace qfiso
