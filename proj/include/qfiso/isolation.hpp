#pragma once

// Verification of isolation candidates and bounded searches for new ones.
//
// A quaternary L is checked against a binary base l by (a) L not representing
// l and (b) L representing every index-p sublattice of l for all primes
// p <= p_max (all p + 1 sublattices, whatever the splitting type of p).

#include <algorithm>
#include <array>
#include <atomic>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "canonical.hpp"
#include "form.hpp"
#include "lattice.hpp"
#include "represent.hpp"
#include "table1.hpp"

namespace qfiso {

struct SublatticeCheck {
    IntMatrix basis;                  // columns in coordinates of the base
    std::optional<IntMatrix> witness; // T with T^t M_L T = Gram of the sublattice
};

struct PrimeStatus {
    Int p = 0;
    bool all_represented = false;
    std::vector<SublatticeCheck> sublattices;
};

struct VerificationResult {
    std::string id;
    Int p_max = 0;
    bool non_representation_of_base = false;
    std::optional<IntMatrix> base_witness;  // set when L represents the base
    std::vector<PrimeStatus> primes;

    bool all_primes_pass() const {
        return std::all_of(primes.begin(), primes.end(), [](const PrimeStatus& s) { return s.all_represented; });
    }
    bool verified() const { return non_representation_of_base && all_primes_pass(); }
    /// Smallest prime with an unrepresented sublattice, or 0.
    Int first_failing_prime() const {
        for (const auto& s : primes)
            if (!s.all_represented) return s.p;
        return 0;
    }
};

/// Representation tests of binary lattices by a fixed L. All embeddings of
/// each Gauss-reduced target are enumerated once; an equivalent target's
/// embeddings are T_reduced R^{-1}, and the lexicographically least one (read
/// column by column) is returned, so witnesses do not depend on search order.
class BinaryWitnessCache {
public:
    explicit BinaryWitnessCache(const Lattice& ambient) : embedder_(ambient) {}

    std::optional<IntMatrix> find(const Lattice& target) {
        Form f = binary_form_of(target);
        Reduction r = reduce(f);
        auto it = cache_.find(r.form);
        if (it == cache_.end()) it = cache_.emplace(r.form, embedder_.all(lattice_of(r.form))).first;
        if (it->second.empty()) return std::nullopt;
        // target o R = reduced, so T_target = T_reduced R^{-1}.
        IntMatrix rinv{{r.transform.m11, -r.transform.m01}, {-r.transform.m10, r.transform.m00}};
        std::optional<IntMatrix> best;
        for (const auto& tr : it->second) {
            IntMatrix t = tr * rinv;
            if (!best || Embedder::column_major_less(t, *best)) best = std::move(t);
        }
        if (!is_embedding(embedder_.ambient(), target, *best)) throw std::logic_error("BinaryWitnessCache: invalid witness");
        return best;
    }

    /// Existence only; skips the enumeration of all embeddings.
    bool represents(const Lattice& target) {
        Form f = reduce(binary_form_of(target)).form;
        auto it = cache_.find(f);
        if (it != cache_.end()) return !it->second.empty();
        return embedder_.find(lattice_of(f)).has_value();
    }

    std::size_t size() const { return cache_.size(); }

private:
    Embedder embedder_;
    std::map<Form, std::vector<IntMatrix>> cache_;
};

namespace detail {

inline PrimeStatus check_prime(BinaryWitnessCache& cache, const Lattice& base, Int p, bool stop_early) {
    PrimeStatus st;
    st.p = p;
    st.all_represented = true;
    for (auto& sub : index_p_sublattices(base, p)) {
        SublatticeCheck c{sub.basis, std::nullopt};
        if (st.all_represented || !stop_early) c.witness = cache.find(sub.lattice);
        if (!c.witness) st.all_represented = false;
        st.sublattices.push_back(std::move(c));
    }
    return st;
}

}  // namespace detail

struct VerifyOptions {
    int threads = 1;
    bool stop_at_first_failure = false;  // skip remaining primes once one fails
};

inline VerificationResult verify_candidate(const CandidateRecord& rec, Int p_max, const VerifyOptions& opt = {}) {
    if (rec.base.rank() != 2) throw std::invalid_argument("verify_candidate: base must be binary");
    if (rec.candidate.discriminant() != Rational(rec.stated_discriminant))
        throw std::invalid_argument("verify_candidate: " + rec.id + " determinant " + rec.candidate.discriminant().str() +
                                    " differs from stated " + std::to_string(rec.stated_discriminant));
    VerificationResult res;
    res.id = rec.id;
    res.p_max = p_max;
    {
        auto w = represents_lattice(rec.candidate, rec.base);
        res.non_representation_of_base = !w;
        if (w) res.base_witness = w->t;
    }
    const std::vector<Int> primes = p_max >= 2 ? primes_up_to(p_max) : std::vector<Int>{};
    res.primes.resize(primes.size());
    const int nthreads = std::max(1, std::min<int>(opt.threads, static_cast<int>(primes.size())));
    std::atomic<std::size_t> next{0};
    std::atomic<Int> failed_at{0};
    std::exception_ptr error;
    std::mutex error_mu;
    auto work = [&] {
        BinaryWitnessCache cache(rec.candidate);
        try {
            for (std::size_t i; (i = next.fetch_add(1)) < primes.size();) {
                Int f = failed_at.load();
                if (opt.stop_at_first_failure && f != 0 && f < primes[i]) {
                    res.primes[i].p = 0;  // marks skipped; trimmed below
                    continue;
                }
                res.primes[i] = detail::check_prime(cache, rec.base, primes[i], opt.stop_at_first_failure);
                if (!res.primes[i].all_represented) {
                    Int cur = failed_at.load();
                    while ((cur == 0 || primes[i] < cur) && !failed_at.compare_exchange_weak(cur, primes[i])) {
                    }
                }
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mu);
            if (!error) error = std::current_exception();
            next = primes.size();
        }
    };
    if (nthreads == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    if (error) std::rethrow_exception(error);
    if (opt.stop_at_first_failure) {
        // Keep a schedule-independent prefix: every prime up to the first failure.
        Int f = failed_at.load();
        std::erase_if(res.primes, [&](const PrimeStatus& s) { return s.p == 0 || (f != 0 && s.p > f); });
    }
    return res;
}

// ---------------------------------------------------------------------------
// Bounded search for candidates.

class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SearchOptions {
    Int budget = 50000000;       // maximum number of Gram matrices examined
    bool odd_order_prefilter = true;
    int threads = 1;
};

struct SearchStats {
    Int grams_examined = 0;
    Int classes = 0;             // distinct isometry classes with det <= bound
    Int rejected_by_prefilter = 0;
    Int represent_base = 0;
    Int failed_primes = 0;
};

/// Every prime with odd exponent in det must divide D.
inline bool passes_odd_order_filter(Int det, Int d) {
    for (const auto& pp : factor(det).factors)
        if (pp.exponent % 2 == 1 && d % pp.prime != 0) return false;
    return true;
}

/// Canonical Grams (doubled) of all integral quaternary lattices with
/// det <= disc_bound, one per isometry class, in increasing order.
inline std::vector<IntMatrix> quaternary_classes(Int disc_bound, Int budget, Int* examined = nullptr) {
    // A Minkowski-reduced basis has a11 <= a22 <= a33 <= a44, |2 a_ij| <= a_ii
    // for i < j, and a11 a22 a33 a44 <= 4 det (in rank 4 the diagonal is the
    // successive minima, and gamma_4^4 = 4); every class has such a basis.
    // Flipping e2, e3, e4 in turn makes a12, a23, a34 <= 0 without leaving
    // the reduced domain. In rank <= 4 reduction is decided by the vectors
    // with entries in {-1, 0, 1}: Q(v) >= a_jj, j the last nonzero entry.
    std::vector<std::pair<std::array<Int, 4>, int>> probes;
    for (int code = 1; code < 81; ++code) {
        std::array<Int, 4> v{};
        int c = code, last = 0;
        for (int i = 0; i < 4; ++i, c /= 3) {
            v[i] = c % 3 - 1;
            if (v[i]) last = i;
        }
        if (std::count(v.begin(), v.end(), 0) <= 2) probes.emplace_back(v, last);
    }
    std::set<IntMatrix> seen;
    Int count = 0;
    const Int prod_bound = checked::mul(Int(4), disc_bound);
    IntMatrix g(4, 4);
    auto off = [&](int i, int j, Int v) { g(i, j) = g(j, i) = v; };
    auto reduced = [&] {
        for (const auto& [v, last] : probes) {
            Int q = 0;
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) q += g(i, j) * v[i] * v[j];
            if (q < g(last, last)) return false;
        }
        return true;
    };
    for (Int a1 = 1; a1 * a1 * a1 * a1 <= prod_bound; ++a1)
        for (Int a2 = a1; a1 * a2 * a2 * a2 <= prod_bound; ++a2)
            for (Int a3 = a2; a1 * a2 * a3 * a3 <= prod_bound; ++a3)
                for (Int a4 = a3; a1 * a2 * a3 * a4 <= prod_bound; ++a4) {
                    g(0, 0) = a1, g(1, 1) = a2, g(2, 2) = a3, g(3, 3) = a4;
                    for (Int b12 = -a1 / 2; b12 <= 0; ++b12)
                        for (Int b13 = -a1 / 2; b13 <= a1 / 2; ++b13)
                            for (Int b14 = -a1 / 2; b14 <= a1 / 2; ++b14)
                                for (Int b23 = -a2 / 2; b23 <= 0; ++b23)
                                    for (Int b24 = -a2 / 2; b24 <= a2 / 2; ++b24)
                                        for (Int b34 = -a3 / 2; b34 <= 0; ++b34) {
                                            if (++count > budget)
                                                throw BudgetExceeded("search budget of " + std::to_string(budget) +
                                                                     " Gram matrices exceeded");
                                            off(0, 1, b12), off(0, 2, b13), off(0, 3, b14);
                                            off(1, 2, b23), off(1, 3, b24), off(2, 3, b34);
                                            // Leading minors; the 1x1 minor is positive.
                                            if (a1 * a2 - b12 * b12 <= 0) continue;
                                            if (determinant(g.columns(0, 3).transpose().columns(0, 3)) <= 0) continue;
                                            Wide det = determinant(g);
                                            if (det <= 0 || det > disc_bound || !reduced()) continue;
                                            seen.insert(canonical_gram(Lattice::from_gram(g)));
                                        }
                }
    if (examined) *examined = count;
    std::vector<IntMatrix> out(seen.begin(), seen.end());
    std::stable_sort(out.begin(), out.end(), [](const IntMatrix& x, const IntMatrix& y) {
        return determinant(x) < determinant(y);
    });
    return out;
}

/// Quaternary lattices with det <= disc_bound that do not represent the base
/// and represent all of its index-p sublattices for p <= p_max. One record per
/// isometry class, with the canonical Gram as candidate.
inline std::vector<CandidateRecord> search_candidates(const Lattice& base, Int disc_bound, Int p_max,
                                                      const SearchOptions& opt = {}, SearchStats* stats = nullptr) {
    if (base.rank() != 2) throw std::invalid_argument("search_candidates: base must be binary");
    if (disc_bound < 1 || p_max < 2) throw std::invalid_argument("search_candidates: bounds must be positive");
    SearchStats st;
    auto classes = quaternary_classes(disc_bound, opt.budget, &st.grams_examined);
    st.classes = static_cast<Int>(classes.size());
    const Int d = normalized_discriminant(base);
    const auto primes = primes_up_to(p_max);
    std::vector<std::optional<CandidateRecord>> found(classes.size());
    std::vector<int> reason(classes.size(), 0);  // 1 prefilter, 2 represents base, 3 failed prime
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < classes.size();) {
            Lattice l = Lattice::from_doubled(classes[i]);
            Int det = l.discriminant().num();
            if (opt.odd_order_prefilter && !passes_odd_order_filter(det, d)) {
                reason[i] = 1;
                continue;
            }
            if (represents_lattice(l, base)) {
                reason[i] = 2;
                continue;
            }
            BinaryWitnessCache cache(l);
            bool ok = true;
            for (Int p : primes) {
                for (const auto& sub : index_p_sublattices(base, p))
                    if (!cache.represents(sub.lattice)) {
                        ok = false;
                        break;
                    }
                if (!ok) break;
            }
            if (!ok) {
                reason[i] = 3;
                continue;
            }
            CandidateRecord r;
            r.base = base;
            r.candidate = l;
            r.stated_discriminant = det;
            r.variant = "search";
            r.note = "found by search with disc_bound " + std::to_string(disc_bound) + ", p_max " + std::to_string(p_max);
            found[i] = std::move(r);
        }
    };
    const int nthreads = std::max(1, opt.threads);
    if (nthreads == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    std::vector<CandidateRecord> out;
    for (std::size_t i = 0; i < classes.size(); ++i) {
        st.rejected_by_prefilter += reason[i] == 1;
        st.represent_base += reason[i] == 2;
        st.failed_primes += reason[i] == 3;
        if (found[i]) {
            found[i]->id = "search." + std::to_string(out.size() + 1);
            out.push_back(std::move(*found[i]));
        }
    }
    if (stats) *stats = st;
    return out;
}

// ---------------------------------------------------------------------------
// Saturation audit: for a norm-p sublattice l(p) of l and a representation
// phi of it in L, the index t of phi(l(p)) in its saturation must be prime
// to p when p splits and is represented by an ambiguous class.

struct SaturationEntry {
    IntMatrix sublattice_basis;  // in coordinates of the base
    IntMatrix embedding;         // 4 x 2
    Int index = 0;               // t
    bool primitive = false;      // t == 1
    bool norm_in_pz = false;     // n(saturation) in pZ
    bool ok = false;             // p does not divide t
};

struct SaturationAudit {
    std::string id;
    Int p = 0;
    bool skipped = false;
    std::string reason;
    std::vector<SaturationEntry> entries;
    bool passed() const {
        return skipped || std::all_of(entries.begin(), entries.end(), [](const SaturationEntry& e) { return e.ok; });
    }
};

inline SaturationAudit saturation_audit(const CandidateRecord& rec, Int p) {
    if (!is_prime(p)) throw std::invalid_argument("saturation_audit: p must be prime");
    SaturationAudit a;
    a.id = rec.id;
    a.p = p;
    const Int d = normalized_discriminant(rec.base);
    if (d % p == 0 || kronecker(d, p) != 1) {
        a.skipped = true;
        a.reason = "p is not split for D = " + std::to_string(d);
        return a;
    }
    auto g = class_group(d);
    bool ambiguous_rep = false;
    for (std::size_t i = 0; i < g.order(); ++i)
        if (g.is_ambiguous(i) && represents(g.element(i), p)) ambiguous_rep = true;
    if (!ambiguous_rep) {
        a.skipped = true;
        a.reason = "p is not represented by an ambiguous class of D = " + std::to_string(d);
        return a;
    }
    auto [s1, s2] = norm_p_sublattices(rec.base, p);
    BinaryWitnessCache cache(rec.candidate);
    for (const auto& sub : {s1, s2}) {
        SaturationEntry e;
        e.sublattice_basis = sub.basis;
        auto w = cache.find(sub.lattice);
        if (!w) {
            e.ok = false;
            a.entries.push_back(e);
            continue;
        }
        e.embedding = *w;
        Saturation sat = saturate(rec.candidate, *w);
        e.index = sat.index;
        e.primitive = sat.index == 1;
        e.norm_in_pz = norm_ideal(sat.lattice) % p == 0;
        e.ok = sat.index % p != 0;
        a.entries.push_back(std::move(e));
    }
    return a;
}

}  // namespace qfiso
