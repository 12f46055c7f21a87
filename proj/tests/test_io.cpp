#include <catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "qfiso/config.hpp"
#include "qfiso/io.hpp"

using namespace qfiso;

namespace {

std::string temp_file(const std::string& name, const std::string& content) {
    auto path = (std::filesystem::temp_directory_path() / ("qfiso_test_" + name)).string();
    std::ofstream(path) << content;
    return path;
}

}  // namespace

TEST_CASE("form and lattice text parsing", "[io]") {
    CHECK(parse_form("2,1,3") == Form{2, 1, 3});
    CHECK(parse_form(" 1, -1 ,10") == Form{1, -1, 10});
    CHECK_THROWS_AS(parse_form("1,2"), ParseError);
    CHECK_THROWS_AS(parse_form("1,x,2"), ParseError);
    CHECK_THROWS_AS(parse_form("1,2,3,4"), ParseError);

    Lattice half = parse_lattice("2,1/2;1/2,3");
    CHECK(half.gram(0, 1) == Rational(1, 2));
    CHECK(half.binary_discriminant() == -23);
    CHECK(format_lattice(half) == "2,1/2;1/2,3");
    CHECK(format_lattice(parse_lattice("2, 1/2  1/2 ,3")) == "2,1/2;1/2,3");
    CHECK(format_lattice(parse_lattice(" 1,0\n0,1 ")) == "1,0;0,1");
    CHECK(format_lattice(parse_lattice("1,0,0,0;0,2,0,1;0,0,4,0;0,1,0,5")) == "1,0,0,0;0,2,0,1;0,0,4,0;0,1,0,5");
    CHECK_THROWS_AS(parse_lattice("1,2;3,4"), ParseError);   // not symmetric
    CHECK_THROWS_AS(parse_lattice("1,0;0"), ParseError);     // ragged
    CHECK_THROWS_AS(parse_lattice("1,1/3;1/3,1"), ParseError);
    CHECK_THROWS_AS(parse_lattice("1,2;2,1"), ParseError);   // indefinite
}

TEST_CASE("JSON round trips", "[io]") {
    for (const auto& r : table1_records(true)) {
        INFO(r.id);
        auto back = record_from_json(record_json(r));
        CHECK(back.id == r.id);
        CHECK(back.row == r.row);
        CHECK(back.position == r.position);
        CHECK(back.variant == r.variant);
        CHECK(back.base.doubled() == r.base.doubled());
        CHECK(back.candidate.doubled() == r.candidate.doubled());
        CHECK(back.stated_discriminant == r.stated_discriminant);
        CHECK(back.printed_group == r.printed_group);
        CHECK(back.note == r.note);
    }
    CHECK(form_from_json(form_json(Form{3, -2, 5})) == Form{3, -2, 5});
    IntMatrix m{{1, -2, 3}, {4, 5, -6}};
    CHECK(matrix_from_json(matrix_json(m)) == m);
    CHECK(rational_json(Rational(1, 2)) == "1/2");
    CHECK(rational_json(Rational(4)) == 4);
    CHECK(rational_from_json(Json("-3/2")) == Rational(-3, 2));
    CHECK_THROWS_AS(rational_from_json(Json(1.5)), ParseError);
}

TEST_CASE("records are validated on load", "[io]") {
    Json j = record_json(table1_records().front());
    j["stated_disc"] = 17;
    CHECK_THROWS_AS(record_from_json(j), ParseError);
    j = record_json(table1_records().front());
    j["extra"] = 1;
    CHECK_THROWS_AS(record_from_json(j), ParseError);
    j = record_json(table1_records().front());
    j["candidate_gram"] = Json::array({Json::array({1, 0}), Json::array({0, 1})});
    CHECK_THROWS_AS(record_from_json(j), ParseError);
}

TEST_CASE("bundled dataset matches the built-in table", "[io]") {
    std::ifstream in(default_dataset_path());
    REQUIRE(in);
    Json file = Json::parse(in);
    CHECK(file == dataset_json(table1_records(true)));
    CHECK(load_table1().size() == 19);

    auto path = temp_file("dataset.json", "");
    write_dataset(path, table1_records(true));
    CHECK(load_dataset(path, true).size() == 20);
    std::ofstream(path) << R"({"schema_version": 99, "records": []})";
    CHECK_THROWS_AS(load_dataset(path), ParseError);
    std::ofstream(path) << "{";
    CHECK_THROWS_AS(load_dataset(path), ParseError);
    std::remove(path.c_str());
    CHECK_THROWS_AS(load_dataset("/nonexistent/table1.json"), std::runtime_error);
}

TEST_CASE("result serialization", "[io]") {
    auto recs = load_table1();
    auto v = verify_candidate(recs.front(), 5);
    Json j = verification_json(v);
    CHECK(j.at("id") == "row1.1");
    CHECK(j.at("verified") == true);
    CHECK(j.at("first_failing_prime") == 0);
    CHECK(j.at("base_witness").is_null());
    REQUIRE(j.at("primes").size() == 3);
    CHECK(j.at("primes")[2].at("sublattices").size() == 6);
    for (const auto& s : j.at("primes")[2].at("sublattices")) {
        IntMatrix basis = matrix_from_json(s.at("basis")), w = matrix_from_json(s.at("witness"));
        CHECK(is_embedding(recs.front().candidate, sublattice(recs.front().base, basis), w));
    }
    CHECK(!verification_json(v, false).at("primes")[0].contains("sublattices"));

    Json a = audit_json(saturation_audit(recs.front(), 7));
    CHECK(a.at("passed") == true);
    CHECK(a.at("entries").size() == 2);

    Json g = class_group_json(ClassGroup(-39));
    CHECK(g.at("h") == 4);
    CHECK(g.at("structure") == "Z/4");
    CHECK(g.at("genera").size() == 2);
    CHECK(g.at("ambiguous").size() == 2);
}

TEST_CASE("config loading is strict", "[io][config]") {
    Config def;
    CHECK(def.p_max == 149);
    CHECK(def.format == "text");
    CHECK_NOTHROW(def.validate());

    auto c = config_from_json(Json::parse(R"({"p_max": 47, "format": "json", "threads": 2,
                                              "grid": {"max_abs_d": 50, "psi_discriminants": [-3]}})"));
    CHECK(c.p_max == 47);
    CHECK(c.format == "json");
    CHECK(c.grid.max_abs_d == 50);
    CHECK(c.grid.max_n == Grid{}.max_n);
    CHECK(c.grid.threads == 2);

    CHECK_THROWS_AS(config_from_json(Json::parse(R"({"p_mx": 47})")), ConfigError);
    CHECK_THROWS_AS(config_from_json(Json::parse(R"({"grid": {"max_d": 5}})")), ConfigError);
    CHECK_THROWS_AS(config_from_json(Json::parse(R"({"p_max": "big"})")), ConfigError);
    CHECK_THROWS_AS(config_from_json(Json::parse(R"({"p_max": 1})")), ConfigError);
    CHECK_THROWS_AS(config_from_json(Json::parse(R"({"format": "xml"})")), ConfigError);
    CHECK_THROWS_AS(config_from_json(Json::parse(R"({"grid": {"psi_discriminants": [-5]}})")), ConfigError);
    CHECK_THROWS_AS(config_from_json(Json::parse("[]")), ConfigError);

    auto path = temp_file("config.json", R"({"p_max": 31})");
    CHECK(load_config(path).p_max == 31);
    ::setenv("QFISO_CONFIG", path.c_str(), 1);
    CHECK(load_config().p_max == 31);
    ::unsetenv("QFISO_CONFIG");
    CHECK(load_config().p_max == 149);
    std::ofstream(path) << "not json";
    CHECK_THROWS_AS(load_config(path), ConfigError);
    std::remove(path.c_str());
    CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
}
