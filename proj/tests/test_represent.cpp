#include <catch_amalgamated.hpp>

#include <set>

#include "qfiso/represent.hpp"

using namespace qfiso;

namespace {

// Oracle: primitive solutions of f(x, y) = n in the box |x|, |y| <= n, which
// contains every solution of a reduced form.
Int primitive_count_by_box(const Form& f, Int n) {
    Int count = 0;
    for (Int x = -n; x <= n; ++x)
        for (Int y = -n; y <= n; ++y)
            if (gcd(x, y) == 1 && f(x, y) == n) ++count;
    return count;
}

Int all_count_by_box(const Form& f, Int n) {
    Int count = 0;
    for (Int x = -n; x <= n; ++x)
        for (Int y = -n; y <= n; ++y)
            if (f(x, y) == n) ++count;
    return count;
}

}  // namespace

TEST_CASE("solutions examples") {
    auto s = solutions(Form{1, 0, 1}, 5);
    CHECK(s.size() == 8);
    for (const auto& r : s) CHECK(r.primitive);
    std::set<std::pair<Int, Int>> pts;
    for (const auto& r : s) pts.insert({r.x, r.y});
    CHECK(pts == std::set<std::pair<Int, Int>>{{1, 2}, {1, -2}, {-1, 2}, {-1, -2}, {2, 1}, {2, -1}, {-2, 1}, {-2, -1}});
    CHECK(solutions(Form{1, 0, 1}, 3).empty());
    for (const Form& f : {Form{2, 1, 5}, Form{3, 3, 4}, Form{7, -3, 11}}) {
        auto v = solutions(f, f.a);
        CHECK(std::find(v.begin(), v.end(), RepSolution{1, 0, true}) != v.end());
    }
    CHECK_THROWS(solutions(Form{1, 0, 1}, 0));
}

TEST_CASE("solutions are complete against a box search") {
    for (const Form& f : {Form{1, 1, 1}, Form{2, 1, 3}, Form{3, -2, 5}, Form{4, 4, 9}})
        for (Int n = 1; n <= 60; ++n) {
            Int all = 0, prim = 0;
            for (Int x = -n; x <= n; ++x)
                for (Int y = -n; y <= n; ++y)
                    if (f(x, y) == n) {
                        ++all;
                        prim += gcd(x, y) == 1;
                    }
            auto s = solutions(f, n);
            REQUIRE(static_cast<Int>(s.size()) == all);
            REQUIRE(std::count_if(s.begin(), s.end(), [](const RepSolution& r) { return r.primitive; }) == prim);
            REQUIRE(represents(f, n) == (all > 0));
        }
}

TEST_CASE("represents examples") {
    CHECK(represents(identity_class(-4), 2));
    CHECK_FALSE(represents(identity_class(-4), 3));
    CHECK(represents(FormClass(Form{2, 1, 3}), 2));
}

TEST_CASE("bulk value sets agree with direct tests") {
    for (const Form& f : {Form{1, 1, 1}, Form{2, 1, 5}, Form{3, 3, 4}, Form{5, 4, 8}}) {
        RepresentedValues vals(f, 3000);
        for (Int n = 1; n <= 3000; ++n) REQUIRE(vals.contains(n) == represents(f, n));
    }
}

TEST_CASE("psi closed form") {
    CHECK(psi(5, -4) == 8);
    CHECK(primitive_count_by_box(Form{1, 0, 1}, 5) == 8);
    for (Int d : {-3, -4, -7, -23, -39})
        CHECK(psi(1, d) == unit_count(d));
    CHECK(unit_count(-3) == 6);
    CHECK(unit_count(-4) == 4);
    CHECK(unit_count(-20) == 2);
    for (Int d : {-3, -4, -23, -39, -56})
        for (Int p : primes_up_to(60)) {
            if (d % p == 0) continue;
            Int k = kronecker(d, p);
            CHECK(psi(p, d) == (k == 1 ? 2 * unit_count(d) : k == -1 ? 0 : unit_count(d)));
        }
    CHECK_THROWS(psi(6, -4));
    CHECK_THROWS(psi(3, -39));
    // x^2 + xy + y^2 = 4 only has the imprimitive solutions 2 * (unit).
    CHECK(psi(4, -3) == 0);
    CHECK(total_representations(4, -3) == 6);
}

TEST_CASE("psi equals primitive representation counts over a class group") {
    for (Int d : {-3, -4, -7, -8, -15, -20, -23, -39, -56}) {
        auto g = class_group(d);
        for (Int n = 1; n <= 120; ++n) {
            if (gcd(n, d) != 1) continue;
            Int total = 0;
            for (const auto& c : g.elements()) total += primitive_count_by_box(c.repr(), n);
            INFO("D=" << d << " n=" << n);
            REQUIRE(psi(n, d) == total);
            Int all = 0;
            for (const auto& c : g.elements()) all += all_count_by_box(c.repr(), n);
            REQUIRE(total_representations(n, d) == all);
        }
    }
}

TEST_CASE("classes_representing and genera") {
    auto g23 = class_group(-23);
    auto one = classes_representing(1, g23);
    REQUIRE(one.size() == 1);
    CHECK(one[0] == g23.identity());
    auto two = classes_representing(2, g23);
    CHECK(std::set<FormClass>(two.begin(), two.end()) ==
          std::set<FormClass>{FormClass(Form{2, 1, 3}), FormClass(Form{2, -1, 3})});
    CHECK(classes_representing(3, class_group(-4)).empty());

    auto g20 = class_group(-20);
    FormClass other(Form{2, 2, 3});
    CHECK(represented_by_genus(2, other, g20));
    CHECK_FALSE(represented_by_genus(2, g20.identity(), g20));
    // n -> C implies n -> gen(C); genus membership is a coset property.
    auto g56 = class_group(-56);
    for (Int n = 1; n <= 80; ++n)
        for (const auto& c : g56.elements()) {
            if (represents(c, n)) REQUIRE(represented_by_genus(n, c, g56));
            for (auto j : g56.genus_members(genus_of(c, g56)))
                REQUIRE(represented_by_genus(n, g56.element(j), g56) == represented_by_genus(n, c, g56));
        }
}

TEST_CASE("no class represents n iff an inert prime divides sf(n)") {
    auto r = no_class_represents_iff(3, -4);
    CHECK(r.holds);
    CHECK(r.witness == 3);
    CHECK_FALSE(no_class_represents_iff(9, -4).holds);
    auto g20 = class_group(-20);
    CHECK(no_class_represents_iff(21, -20).holds == classes_representing(21, g20).empty());
    for (Int d = -3; d >= -200; --d) {
        if (!is_valid_discriminant(d)) continue;
        auto g = class_group(d);
        for (Int n = 1; n <= 100; ++n) {
            if (gcd(n, d) != 1) continue;
            REQUIRE(no_class_represents_iff(n, d).holds == classes_representing(n, g).empty());
        }
    }
    CHECK_THROWS(no_class_represents_iff(2, -4));
}

TEST_CASE("classify np^2 primes") {
    auto g39 = class_group(-39);
    int checked_cases = 0;
    for (std::size_t ci = 0; ci < g39.order(); ++ci) {
        const auto& cls = g39.element(ci);
        for (Int n = 1; n <= 60; ++n) {
            if (represents(cls, n)) {
                CHECK_THROWS(classify_np2_primes(n, cls, g39, 50));
                continue;
            }
            auto rep = classify_np2_primes(n, cls, g39, 200);
            INFO("C=" << cls << " n=" << n);
            CHECK(rep.consistent);
            // Observed primes recomputed from raw solutions.
            for (Int p : primes_up_to(200))
                CHECK((std::find(rep.observed.begin(), rep.observed.end(), p) != rep.observed.end()) ==
                      !solutions(cls.repr(), n * p * p).empty());
            if (rep.regime == Np2Regime::RepresentedByGenus) ++checked_cases;
        }
    }
    CHECK(checked_cases > 0);

    // Regime 1: nothing represents n = 7 for D = -4, so no np^2 either.
    auto g4 = class_group(-4);
    auto r = classify_np2_primes(7, g4.identity(), g4, 100);
    CHECK(r.regime == Np2Regime::NotRepresentedByGroup);
    CHECK(r.observed.empty());
}
