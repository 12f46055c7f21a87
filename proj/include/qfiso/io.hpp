#pragma once

// Text parsing and JSON (de)serialization of forms, lattices, candidate
// records, verification results and audits. Every emitted object can be read
// back by the matching parser.

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "form.hpp"
#include "isolation.hpp"
#include "lattice.hpp"
#include "rational.hpp"
#include "table1.hpp"
#include "theorems.hpp"

#ifndef QFISO_DATA_DIR
#define QFISO_DATA_DIR "data"
#endif

namespace qfiso {

inline constexpr int kSchemaVersion = 1;

class ParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    if (!s.empty() && s.back() == sep) out.push_back("");
    return out;
}

inline std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\n");
    return s.substr(b, e - b + 1);
}

inline Int parse_int(const std::string& text) {
    std::string t = trim(text);
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(t, &used);
    } catch (const std::exception&) {
        throw ParseError("not an integer: '" + text + "'");
    }
    if (used != t.size()) throw ParseError("not an integer: '" + text + "'");
    return v;
}

}  // namespace detail

/// "a,b,c" -> Form.
inline Form parse_form(const std::string& text) {
    auto parts = detail::split(text, ',');
    if (parts.size() != 3) throw ParseError("form must be 'a,b,c': '" + text + "'");
    return Form{detail::parse_int(parts[0]), detail::parse_int(parts[1]), detail::parse_int(parts[2])};
}

/// Row-major Gram, rows separated by ';' (or whitespace) and entries by ',',
/// e.g. "2,1/2;1/2,3" or "2,1/2 1/2,3". Entries may be integers or n/2
/// fractions.
inline Lattice parse_lattice(const std::string& text) {
    // Spaces next to a separator are padding; any other whitespace run ends a row.
    std::string norm;
    for (char ch : detail::trim(text)) {
        const bool ws = ch == ' ' || ch == '\t' || ch == '\n';
        if (ws) {
            if (!norm.empty() && norm.back() != ',' && norm.back() != ';' && norm.back() != ' ') norm += ' ';
            continue;
        }
        if ((ch == ',' || ch == ';' || ch == '/') && !norm.empty() && norm.back() == ' ') norm.pop_back();
        norm += ch;
    }
    for (char& ch : norm)
        if (ch == ' ') ch = ';';
    RationalGram g;
    for (const auto& row : detail::split(norm, ';')) {
        std::vector<Rational> r;
        for (const auto& e : detail::split(row, ',')) {
            try {
                r.push_back(Rational::parse(detail::trim(e)));
            } catch (const std::invalid_argument& ex) {
                throw ParseError(std::string("bad Gram entry: ") + ex.what());
            }
        }
        g.push_back(std::move(r));
    }
    try {
        return Lattice::from_rational(g);
    } catch (const OverflowError&) {
        throw;
    } catch (const std::invalid_argument& ex) {
        throw ParseError(std::string("bad lattice '") + text + "': " + ex.what());
    }
}

inline std::string format_lattice(const Lattice& l) {
    std::string out;
    for (int i = 0; i < l.rank(); ++i) {
        if (i) out += ';';
        for (int j = 0; j < l.rank(); ++j) {
            if (j) out += ',';
            out += l.gram(i, j).str();
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// JSON

inline Json rational_json(const Rational& r) {
    if (r.is_integer()) return r.num();
    return r.str();
}

inline Rational rational_from_json(const Json& j) {
    if (j.is_number_integer()) return Rational(j.get<Int>());
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    throw ParseError("expected an integer or a fraction string, got " + j.dump());
}

inline Json matrix_json(const IntMatrix& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json r = Json::array();
        for (int j = 0; j < m.cols(); ++j) r.push_back(m(i, j));
        rows.push_back(r);
    }
    return rows;
}

inline IntMatrix matrix_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw ParseError("expected a non-empty matrix");
    const int rows = static_cast<int>(j.size()), cols = static_cast<int>(j.at(0).size());
    IntMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        if (static_cast<int>(j.at(i).size()) != cols) throw ParseError("ragged matrix");
        for (int k = 0; k < cols; ++k) m(i, k) = j.at(i).at(k).get<Int>();
    }
    return m;
}

inline Json lattice_json(const Lattice& l) {
    Json rows = Json::array();
    for (const auto& row : gram_of(l)) {
        Json r = Json::array();
        for (const auto& e : row) r.push_back(rational_json(e));
        rows.push_back(r);
    }
    return rows;
}

inline Lattice lattice_from_json(const Json& j) {
    if (!j.is_array()) throw ParseError("Gram matrix must be an array of rows");
    RationalGram g;
    for (const auto& row : j) {
        if (!row.is_array()) throw ParseError("Gram row must be an array");
        std::vector<Rational> r;
        for (const auto& e : row) r.push_back(rational_from_json(e));
        g.push_back(std::move(r));
    }
    return Lattice::from_rational(g);
}

inline Json form_json(const Form& f) { return Json::array({f.a, f.b, f.c}); }

inline Form form_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 3) throw ParseError("form must be [a, b, c]");
    return Form{j[0].get<Int>(), j[1].get<Int>(), j[2].get<Int>()};
}

inline Json record_json(const CandidateRecord& r) {
    return Json{{"id", r.id},
                {"row", r.row},
                {"position", r.position},
                {"variant", r.variant},
                {"base_gram", lattice_json(r.base)},
                {"candidate_gram", lattice_json(r.candidate)},
                {"stated_disc", r.stated_discriminant},
                {"printed_group", r.printed_group},
                {"note", r.note}};
}

inline CandidateRecord record_from_json(const Json& j) {
    static const std::set<std::string> keys{"id",          "row",           "position", "variant", "base_gram",
                                            "candidate_gram", "stated_disc", "printed_group", "note"};
    for (const auto& [k, v] : j.items())
        if (!keys.count(k)) throw ParseError("unknown record key '" + k + "'");
    CandidateRecord r;
    r.id = j.at("id").get<std::string>();
    r.row = j.value("row", 0);
    r.position = j.value("position", 0);
    r.variant = j.value("variant", std::string("printed"));
    r.base = lattice_from_json(j.at("base_gram"));
    r.candidate = lattice_from_json(j.at("candidate_gram"));
    r.stated_discriminant = j.at("stated_disc").get<Int>();
    r.printed_group = j.value("printed_group", std::string());
    r.note = j.value("note", std::string());
    if (r.base.rank() != 2) throw ParseError("record " + r.id + ": base must be binary");
    if (r.candidate.rank() != 4) throw ParseError("record " + r.id + ": candidate must be quaternary");
    if (r.candidate.discriminant() != Rational(r.stated_discriminant))
        throw ParseError("record " + r.id + ": determinant " + r.candidate.discriminant().str() +
                         " does not match stated " + std::to_string(r.stated_discriminant));
    return r;
}

inline Json dataset_json(const std::vector<CandidateRecord>& records) {
    Json recs = Json::array();
    for (const auto& r : records) recs.push_back(record_json(r));
    return Json{{"schema_version", kSchemaVersion},
                {"description",
                 "candidates for quaternary isolations of binary lattices; variant 'printed' is the table as printed"},
                {"records", recs}};
}

inline std::string default_dataset_path() { return std::string(QFISO_DATA_DIR) + "/table1.json"; }

/// Reads a dataset file; only 'printed' records unless include_variants.
inline std::vector<CandidateRecord> load_dataset(const std::string& path, bool include_variants = false) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open dataset '" + path + "'");
    Json j;
    try {
        j = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ParseError("dataset '" + path + "' is not valid JSON: " + e.what());
    }
    if (j.value("schema_version", 0) != kSchemaVersion)
        throw ParseError("dataset '" + path + "' has unsupported schema_version");
    std::vector<CandidateRecord> out;
    for (const auto& rj : j.at("records")) {
        auto r = record_from_json(rj);
        if (include_variants || r.variant == "printed") out.push_back(std::move(r));
    }
    return out;
}

/// The 19 candidates from the bundled dataset file.
inline std::vector<CandidateRecord> load_table1(bool include_variants = false) {
    return load_dataset(default_dataset_path(), include_variants);
}

inline void write_dataset(const std::string& path, const std::vector<CandidateRecord>& records) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write dataset '" + path + "'");
    out << dataset_json(records).dump(2) << "\n";
}

inline Json verification_json(const VerificationResult& v, bool with_witnesses = true) {
    Json primes = Json::array();
    for (const auto& s : v.primes) {
        Json subs = Json::array();
        if (with_witnesses)
            for (const auto& c : s.sublattices)
                subs.push_back(Json{{"basis", matrix_json(c.basis)},
                                    {"witness", c.witness ? matrix_json(*c.witness) : Json(nullptr)}});
        Json pj{{"p", s.p}, {"all_represented", s.all_represented}, {"sublattices_checked", s.sublattices.size()}};
        if (with_witnesses) pj["sublattices"] = subs;
        primes.push_back(pj);
    }
    return Json{{"schema_version", kSchemaVersion},
                {"id", v.id},
                {"p_max", v.p_max},
                {"verified", v.verified()},
                {"non_representation_of_base", v.non_representation_of_base},
                {"base_witness", v.base_witness ? matrix_json(*v.base_witness) : Json(nullptr)},
                {"first_failing_prime", v.first_failing_prime()},
                {"primes", primes}};
}

inline Json audit_json(const SaturationAudit& a) {
    Json entries = Json::array();
    for (const auto& e : a.entries)
        entries.push_back(Json{{"sublattice_basis", matrix_json(e.sublattice_basis)},
                               {"embedding", e.embedding.rows() ? matrix_json(e.embedding) : Json(nullptr)},
                               {"index", e.index},
                               {"primitive", e.primitive},
                               {"norm_in_pZ", e.norm_in_pz},
                               {"ok", e.ok}});
    return Json{{"id", a.id},        {"p", a.p},           {"passed", a.passed()},
                {"skipped", a.skipped}, {"reason", a.reason}, {"entries", entries}};
}

inline Json class_group_json(const ClassGroup& g) {
    Json forms = Json::array(), orders = Json::array(), amb = Json::array(), genera = Json::array();
    for (std::size_t i = 0; i < g.order(); ++i) {
        forms.push_back(form_json(g.element(i).repr()));
        orders.push_back(g.element_order(i));
        if (g.is_ambiguous(i)) amb.push_back(form_json(g.element(i).repr()));
    }
    for (int k = 0; k < g.genus_count(); ++k) {
        Json members = Json::array();
        for (auto i : g.genus_members(k)) members.push_back(form_json(g.element(i).repr()));
        genera.push_back(members);
    }
    Json table = Json::array();
    for (std::size_t i = 0; i < g.order(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < g.order(); ++j) row.push_back(g.multiply(i, j));
        table.push_back(row);
    }
    return Json{{"schema_version", kSchemaVersion},
                {"D", g.discriminant()},
                {"h", g.order()},
                {"structure", g.structure()},
                {"forms", forms},
                {"orders", orders},
                {"ambiguous", amb},
                {"genera", genera},
                {"table", table}};
}

}  // namespace qfiso
