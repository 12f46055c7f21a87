#include <catch_amalgamated.hpp>

#include <random>
#include <set>

#include "qfiso/form.hpp"
#include "qfiso/represent.hpp"

using namespace qfiso;

namespace {

std::vector<Int> valid_discriminants(Int max_abs) {
    std::vector<Int> out;
    for (Int d = -3; d >= -max_abs; --d)
        if (is_valid_discriminant(d)) out.push_back(d);
    return out;
}

// Oracle: every reduced form reachable from f by a small SL2(Z) matrix.
std::set<Form> reduced_images(const Form& f, Int box) {
    std::set<Form> out;
    for (Int p = -box; p <= box; ++p)
        for (Int q = -box; q <= box; ++q)
            for (Int r = -box; r <= box; ++r)
                for (Int s = -box; s <= box; ++s) {
                    if (p * s - q * r != 1) continue;
                    Form g = transform(f, Mat2{p, q, r, s});
                    if (g.is_reduced()) out.insert(g);
                }
    return out;
}

Mat2 random_sl2(std::mt19937& rng) {
    std::uniform_int_distribution<int> pick(0, 3), step(-3, 3);
    Mat2 m;
    for (int i = 0; i < 6; ++i) {
        Int k = step(rng);
        Mat2 e = pick(rng) % 2 == 0 ? Mat2{1, k, 0, 1} : Mat2{1, 0, k, 1};
        m = m * e;
    }
    return m;
}

}  // namespace

TEST_CASE("discriminant") {
    CHECK(discriminant(Form{1, 0, 1}) == -4);
    CHECK(discriminant(Form{1, 1, 6}) == -23);
    CHECK(discriminant(Form{2, 1, 5}) == -39);
}

TEST_CASE("reduce examples") {
    auto r = reduce(Form{1, 0, 1});
    CHECK(r.form == Form{1, 0, 1});
    CHECK(r.transform == Mat2{});

    auto s = reduce(Form{10, 34, 29});
    CHECK(discriminant(Form{10, 34, 29}) == -4);
    CHECK(s.form == Form{1, 0, 1});
    CHECK(reduced_images(Form{10, 34, 29}, 6) == std::set<Form>{Form{1, 0, 1}});
    CHECK(s.transform.det() == 1);
    CHECK(transform(Form{10, 34, 29}, s.transform) == s.form);

    CHECK(reduce(Form{3, 3, 4}).form == Form{3, 3, 4});
    CHECK(discriminant(Form{3, 3, 4}) == -39);
    CHECK_THROWS(reduce(Form{1, 3, 1}));
}

TEST_CASE("reduction is idempotent and a proper-class invariant") {
    std::mt19937 rng(7);
    for (Int d : valid_discriminants(400)) {
        for (const auto& f : reduced_forms(d)) {
            REQUIRE(reduce(f).form == f);
            for (int trial = 0; trial < 3; ++trial) {
                Mat2 m = random_sl2(rng);
                Form g = transform(f, m);
                auto r = reduce(g);
                REQUIRE(r.form == f);
                REQUIRE(r.transform.det() == 1);
                REQUIRE(transform(g, r.transform) == f);
                REQUIRE(reduce(r.form).form == r.form);
            }
        }
    }
}

TEST_CASE("small class groups") {
    CHECK(class_group(-3).order() == 1);
    CHECK(class_group(-4).order() == 1);
    auto g23 = class_group(-23);
    CHECK(g23.order() == 3);
    CHECK(g23.structure() == "Z/3");
    auto g39 = class_group(-39);
    CHECK(g39.order() == 4);
    CHECK(g39.structure() == "Z/4");
    std::vector<Form> forms;
    for (const auto& c : g39.elements()) forms.push_back(c.repr());
    CHECK(forms == std::vector<Form>{{1, 1, 10}, {2, -1, 5}, {2, 1, 5}, {3, 3, 4}});
    CHECK(class_group(-84).structure() == "Z/2 x Z/2");
    CHECK(class_group(-20).structure() == "Z/2");
    CHECK_THROWS(class_group(-5));
    CHECK_THROWS(class_group(8));
}

TEST_CASE("composition examples") {
    auto e = identity_class(-23);
    CHECK(compose(e, e) == e);
    FormClass c(Form{2, 1, 3});
    CHECK(compose(c, c) == FormClass(Form{2, -1, 3}));
    CHECK(inverse(c) == FormClass(Form{2, -1, 3}));
    CHECK(inverse(e) == e);
    auto g39 = class_group(-39);
    CHECK(g39.element_order(g39.index_of(FormClass(Form{2, 1, 5}))) == 4);
    CHECK_THROWS(compose(c, identity_class(-39)));
}

TEST_CASE("group axioms for all |D| <= 400") {
    for (Int d : valid_discriminants(400)) {
        auto g = class_group(d);
        const auto h = g.order();
        const auto e = g.identity_index();
        REQUIRE(g.identity() == identity_class(d));
        for (std::size_t x = 0; x < h; ++x) {
            REQUIRE(g.multiply(x, e) == x);
            REQUIRE(g.multiply(x, g.inverse_index(x)) == e);
            for (std::size_t y = 0; y < h; ++y) {
                REQUIRE(g.multiply(x, y) == g.multiply(y, x));
                for (std::size_t z = 0; z < h; ++z)
                    REQUIRE(g.multiply(g.multiply(x, y), z) == g.multiply(x, g.multiply(y, z)));
            }
        }
        Int product = 1;
        for (Int f : g.invariant_factors()) product *= f;
        REQUIRE(product == static_cast<Int>(h));
    }
}

TEST_CASE("ambiguous classes and genera") {
    CHECK(ambiguous_classes(class_group(-3)).size() == 1);
    CHECK(ambiguous_classes(class_group(-39)).size() == 2);
    auto g20 = class_group(-20);
    auto amb = ambiguous_classes(g20);
    REQUIRE(amb.size() == 2);
    CHECK(amb[0].repr() == Form{1, 0, 5});
    CHECK(amb[1].repr() == Form{2, 2, 3});
    for (const auto& a : amb) CHECK(inverse(a) == a);

    auto g39 = class_group(-39);
    auto gen = FormClass(Form{2, 1, 5});
    auto principal = g39.genus_members(0);
    std::set<FormClass> got;
    for (auto i : principal) got.insert(g39.element(i));
    CHECK(got == std::set<FormClass>{g39.identity(), compose(gen, gen)});
    CHECK(genus_of(g39.identity(), g39) == 0);
}

TEST_CASE("genus cosets, order-4 elements and ambiguous classes") {
    CHECK(has_order_4_element(class_group(-39)));
    CHECK_FALSE(has_order_4_element(class_group(-3)));
    CHECK_FALSE(has_order_4_element(class_group(-23)));
    for (Int d : valid_discriminants(500)) {
        auto g = class_group(d);
        auto amb = ambiguous_classes(g);
        REQUIRE(static_cast<std::size_t>(g.genus_count()) == amb.size());
        std::set<int> genera_with_ambiguous;
        for (const auto& a : amb) genera_with_ambiguous.insert(genus_of(a, g));
        bool every_genus = static_cast<int>(genera_with_ambiguous.size()) == g.genus_count();
        REQUIRE(every_genus == !has_order_4_element(g));
        for (std::size_t ai = 0; ai < g.order(); ++ai) {
            if (!g.is_ambiguous(ai)) continue;
            for (std::size_t x = 0; x < g.order(); ++x)
                REQUIRE(g.genus(g.multiply(ai, g.multiply(x, x))) == g.genus(ai));
        }
    }
}

TEST_CASE("products of represented coprime values") {
    // m -> C, n -> D with gcd(m, n) = 1 gives mn -> CD or mn -> CD^-1.
    for (Int d : valid_discriminants(160)) {
        auto g = class_group(d);
        ValueOracle oracle(g, 2500);
        for (std::size_t c = 0; c < g.order(); ++c)
            for (std::size_t e = 0; e < g.order(); ++e)
                for (Int m = 1; m <= 50; ++m) {
                    if (!oracle.represents(c, m)) continue;
                    for (Int n = 1; n <= 50; ++n) {
                        if (gcd(m, n) != 1 || !oracle.represents(e, n)) continue;
                        bool ok = oracle.represents(g.multiply(c, e), m * n) ||
                                  oracle.represents(g.multiply(c, g.inverse_index(e)), m * n);
                        INFO("D=" << d << " C=" << g.element(c) << " D'=" << g.element(e) << " m=" << m << " n=" << n);
                        REQUIRE(ok);
                    }
                }
    }
}
