#include <catch_amalgamated.hpp>

#include <map>
#include <set>

#include "qfiso/canonical.hpp"
#include "qfiso/io.hpp"
#include "qfiso/isolation.hpp"

using namespace qfiso;

namespace {

const std::vector<CandidateRecord>& printed() {
    static const auto recs = load_table1();
    return recs;
}

const CandidateRecord& by_id(const std::string& id) {
    for (const auto& r : printed())
        if (r.id == id) return r;
    throw std::invalid_argument(id);
}

// All sublattices of Z^2 of index m, as Hermite bases [[a, b], [0, d]].
std::vector<IntMatrix> sublattice_bases(Int m) {
    std::vector<IntMatrix> out;
    for (Int a = 1; a <= m; ++a) {
        if (m % a) continue;
        Int d = m / a;
        for (Int b = 0; b < d; ++b) out.push_back(IntMatrix{{a, b}, {0, d}});
    }
    return out;
}

}  // namespace

TEST_CASE("dataset holds the 19 printed candidates", "[isolation]") {
    const auto& recs = printed();
    REQUIRE(recs.size() == 19);
    std::map<int, int> per_row;
    for (const auto& r : recs) {
        ++per_row[r.row];
        CHECK(r.candidate.discriminant() == Rational(r.stated_discriminant));
        CHECK(r.variant == "printed");
        CHECK(r.candidate.is_integral());
    }
    CHECK(per_row == std::map<int, int>{{1, 10}, {2, 4}, {3, 1}, {4, 4}});
    CHECK(load_table1(true).size() == 20);
}

TEST_CASE("every printed candidate verifies up to 47", "[isolation]") {
    for (const auto& r : printed()) {
        INFO(r.id);
        auto v = verify_candidate(r, 47, VerifyOptions{2, false});
        CHECK(v.non_representation_of_base);
        CHECK(!v.base_witness);
        REQUIRE(v.primes.size() == primes_up_to(47).size());
        for (const auto& s : v.primes) {
            INFO("p = " << s.p);
            CHECK(s.all_represented);
            REQUIRE(static_cast<Int>(s.sublattices.size()) == s.p + 1);
            for (const auto& c : s.sublattices) {
                REQUIRE(c.witness);
                CHECK(is_embedding(r.candidate, sublattice(r.base, c.basis), *c.witness));
                CHECK((determinant(c.basis) == s.p || determinant(c.basis) == -s.p));
            }
        }
        CHECK(v.verified());
    }
}

TEST_CASE("verification is monotone in p_max", "[isolation]") {
    const auto& r = by_id("row4.1");
    auto small = verify_candidate(r, 13), large = verify_candidate(r, 31);
    REQUIRE(small.primes.size() < large.primes.size());
    for (std::size_t i = 0; i < small.primes.size(); ++i) {
        CHECK(small.primes[i].p == large.primes[i].p);
        CHECK(small.primes[i].all_represented == large.primes[i].all_represented);
        REQUIRE(small.primes[i].sublattices.size() == large.primes[i].sublattices.size());
        for (std::size_t k = 0; k < small.primes[i].sublattices.size(); ++k)
            CHECK(small.primes[i].sublattices[k].witness == large.primes[i].sublattices[k].witness);
    }
}

TEST_CASE("verification rejects non-isolations", "[isolation]") {
    SECTION("a lattice that represents the base") {
        CandidateRecord r = by_id("row1.1");
        r.id = "I4";
        r.candidate = Lattice::from_gram(IntMatrix::identity(4));
        r.stated_discriminant = 1;
        auto v = verify_candidate(r, 7);
        CHECK(!v.non_representation_of_base);
        REQUIRE(v.base_witness);
        CHECK(is_embedding(r.candidate, r.base, *v.base_witness));
        CHECK(!v.verified());
    }
    SECTION("the half-integral reading of row 3 fails at p = 2") {
        auto all = load_table1(true);
        auto it = std::find_if(all.begin(), all.end(), [](const CandidateRecord& r) { return r.variant != "printed"; });
        REQUIRE(it != all.end());
        auto v = verify_candidate(*it, 11);
        CHECK(v.non_representation_of_base);
        CHECK(v.first_failing_prime() == 2);
        CHECK(!v.verified());
    }
    SECTION("a stated determinant that does not match is refused") {
        CandidateRecord r = by_id("row2.1");
        r.stated_discriminant += 1;
        CHECK_THROWS_AS(verify_candidate(r, 5), std::invalid_argument);
    }
    SECTION("stop_at_first_failure stops") {
        auto all = load_table1(true);
        auto v = verify_candidate(all.back(), 30, VerifyOptions{1, true});
        CHECK(v.primes.size() == 1);
    }
}

TEST_CASE("prime index sublattices cover every finite index sublattice", "[isolation]") {
    // Each sublattice of composite index lies in one of prime index, so an
    // isolation also represents all sublattices of index <= 20.
    const auto& r = by_id("row1.1");
    BinaryWitnessCache cache(r.candidate);
    for (Int m = 2; m <= 20; ++m) {
        INFO("index " << m);
        for (const auto& b : sublattice_bases(m)) {
            Lattice sub = sublattice(r.base, b);
            auto w = cache.find(sub);
            REQUIRE(w);
            CHECK(is_embedding(r.candidate, sub, *w));
            if (is_prime(m)) continue;
            bool contained = false;
            for (Int p : primes_up_to(m)) {
                if (m % p) continue;
                for (const auto& s : index_p_sublattices(r.base, p)) {
                    // b = s.basis * X with X integral
                    IntMatrix adj{{s.basis(1, 1), -s.basis(0, 1)}, {-s.basis(1, 0), s.basis(0, 0)}};
                    IntMatrix x = adj * b;
                    bool integral = true;
                    for (int i = 0; i < 2; ++i)
                        for (int j = 0; j < 2; ++j) integral = integral && x(i, j) % p == 0;
                    contained = contained || integral;
                }
            }
            CHECK(contained);
        }
    }
}

TEST_CASE("odd-order prefilter", "[isolation]") {
    CHECK(passes_odd_order_filter(16, -3));
    CHECK(passes_odd_order_filter(52, -39));
    CHECK(passes_odd_order_filter(2401, -3 * 7 * 7));
    CHECK_FALSE(passes_odd_order_filter(2, -3));
    CHECK_FALSE(passes_odd_order_filter(12, -4));
    for (const auto& r : printed()) {
        INFO(r.id);
        CHECK(passes_odd_order_filter(r.stated_discriminant, normalized_discriminant(r.base)));
    }
}

TEST_CASE("search finds the printed candidates of small determinant", "[isolation][search]") {
    const Lattice a2 = Lattice::from_gram(IntMatrix{{2, 1}, {1, 2}});
    CHECK(search_candidates(a2, 10, 13).empty());

    SearchStats with, without;
    auto filtered = search_candidates(a2, 36, 13, SearchOptions{}, &with);
    SearchOptions off;
    off.odd_order_prefilter = false;
    auto unfiltered = search_candidates(a2, 36, 13, off, &without);
    CHECK(with.classes == without.classes);

    std::set<IntMatrix> got, got_unfiltered, want;
    for (const auto& r : filtered) got.insert(canonical_gram(r.candidate));
    for (const auto& r : unfiltered) got_unfiltered.insert(canonical_gram(r.candidate));
    CHECK(got == got_unfiltered);
    for (const auto& r : printed())
        if (r.row == 1 && r.stated_discriminant <= 36) want.insert(canonical_gram(r.candidate));
    REQUIRE(want.size() == 4);
    CHECK(got == want);

    auto sixteen = search_candidates(a2, 16, 13);
    CHECK(sixteen.size() == 2);
    for (const auto& r : sixteen) CHECK(r.stated_discriminant == 16);
}

TEST_CASE("search budget is enforced", "[isolation][search]") {
    const Lattice a2 = Lattice::from_gram(IntMatrix{{2, 1}, {1, 2}});
    SearchOptions opt;
    opt.budget = 100;
    CHECK_THROWS_AS(search_candidates(a2, 16, 13, opt), BudgetExceeded);
    CHECK_THROWS_AS(search_candidates(Lattice::from_gram(IntMatrix::identity(3)), 16, 13), std::invalid_argument);
}

TEST_CASE("quaternary class enumeration", "[isolation][search]") {
    auto classes = quaternary_classes(4, 1000000);
    std::set<IntMatrix> distinct(classes.begin(), classes.end());
    CHECK(distinct.size() == classes.size());
    // det <= 4 includes I4 and the root lattice D4.
    bool has_i4 = false, has_d4 = false;
    const IntMatrix i4 = canonical_gram(Lattice::from_gram(IntMatrix::identity(4)));
    const IntMatrix d4 =
        canonical_gram(Lattice::from_gram(IntMatrix{{2, -1, 0, 0}, {-1, 2, -1, -1}, {0, -1, 2, 0}, {0, -1, 0, 2}}));
    for (const auto& c : classes) has_i4 = has_i4 || c == i4, has_d4 = has_d4 || c == d4;
    CHECK(has_i4);
    CHECK(has_d4);
    for (std::size_t i = 0; i < classes.size(); ++i)
        for (std::size_t j = i + 1; j < classes.size(); ++j)
            CHECK_FALSE(isometric(Lattice::from_doubled(classes[i]), Lattice::from_doubled(classes[j])));
}

TEST_CASE("saturation audit of the norm-p sublattices", "[isolation]") {
    std::map<int, int> audited;
    for (const auto& r : printed()) {
        for (Int p : primes_up_to(80)) {
            auto a = saturation_audit(r, p);
            INFO(r.id << " p = " << p);
            if (a.skipped) {
                CHECK(!a.reason.empty());
                continue;
            }
            ++audited[r.row];
            REQUIRE(a.entries.size() == 2);
            for (const auto& e : a.entries) {
                CHECK(e.ok);
                CHECK(e.index % p != 0);
                CHECK(e.primitive == (e.index == 1));
            }
            CHECK(a.passed());
        }
    }
    for (int row = 1; row <= 4; ++row) CHECK(audited[row] > 0);
    CHECK(saturation_audit(by_id("row4.1"), 13).skipped);
    CHECK_THROWS_AS(saturation_audit(by_id("row4.1"), 12), std::invalid_argument);
}

TEST_CASE("search up to det 81 returns exactly the printed candidates for 2Z^2", "[isolation][search]") {
    const Lattice base = Lattice::from_gram(IntMatrix{{2, 0}, {0, 2}});
    std::set<IntMatrix> got, want;
    for (const auto& r : search_candidates(base, 81, 47)) got.insert(canonical_gram(r.candidate));
    for (const auto& r : printed())
        if (r.row == 2 && r.stated_discriminant <= 81) want.insert(canonical_gram(r.candidate));
    CHECK(got == want);
}

TEST_CASE("witnesses are the lexicographically least embeddings", "[isolation]") {
    for (const char* id : {"row1.1", "row3.1", "row4.1"}) {
        const auto& r = by_id(id);
        Embedder direct(r.candidate);
        auto v = verify_candidate(r, 7);
        for (const auto& s : v.primes)
            for (const auto& c : s.sublattices) {
                INFO(id << " p = " << s.p);
                Lattice sub = sublattice(r.base, c.basis);
                auto every = direct.all(sub);
                REQUIRE(!every.empty());
                for (const auto& t : every) CHECK(is_embedding(r.candidate, sub, t));
                auto least = *std::min_element(every.begin(), every.end(), Embedder::column_major_less);
                REQUIRE(c.witness);
                CHECK(*c.witness == least);
            }
    }
}

TEST_CASE("witnesses do not depend on the thread count", "[isolation]") {
    const auto& r = by_id("row4.4");
    auto a = verify_candidate(r, 23, VerifyOptions{1, false}), b = verify_candidate(r, 23, VerifyOptions{3, false});
    REQUIRE(a.primes.size() == b.primes.size());
    for (std::size_t i = 0; i < a.primes.size(); ++i)
        for (std::size_t k = 0; k < a.primes[i].sublattices.size(); ++k)
            CHECK(a.primes[i].sublattices[k].witness == b.primes[i].sublattices[k].witness);
}
