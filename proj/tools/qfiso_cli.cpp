// qfiso: command line front end.
//
// Exit codes: 0 ok / true, 1 false / check failed, 2 usage or input error,
// 3 overflow or search budget exceeded, 4 undecided.

#include <CLI11.hpp>

#include <qfiso/qfiso.hpp>

#include <iostream>
#include <sstream>

using namespace qfiso;

namespace {

enum Exit { kOk = 0, kFalse = 1, kUsage = 2, kOverflow = 3, kUnknown = 4 };

struct Globals {
    std::string config_path;
    std::string format;
    std::string dataset;
    int threads = 0;
    std::string seed_path;
    Config cfg;
};

void emit(const Config& cfg, const Json& j, const std::string& text) {
    if (cfg.format == "json")
        std::cout << j.dump(2) << "\n";
    else
        std::cout << text;
}

std::string str(const Form& f) {
    std::ostringstream os;
    os << f;
    return os.str();
}

std::string matrix_text(const IntMatrix& m) {
    std::string out;
    for (int i = 0; i < m.rows(); ++i) {
        out += i ? "; " : "";
        for (int j = 0; j < m.cols(); ++j) out += (j ? " " : "") + std::to_string(m(i, j));
    }
    return out;
}

std::vector<CandidateRecord> select(const Config& cfg, const std::vector<std::string>& ids, bool variants) {
    auto all = load_dataset(cfg.dataset, variants || !ids.empty());
    if (ids.empty()) return all;
    std::vector<CandidateRecord> out;
    for (const auto& id : ids) {
        auto it = std::find_if(all.begin(), all.end(), [&](const CandidateRecord& r) { return r.id == id; });
        if (it == all.end()) throw ParseError("no record with id '" + id + "' in " + cfg.dataset);
        out.push_back(*it);
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact computations with positive definite binary forms and lattices of rank <= 4"};
    app.require_subcommand(0, 1);
    Globals g;
    app.add_option("--config", g.config_path, "JSON config file (default: $QFISO_CONFIG)");
    auto* fmt_opt = app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    auto* data_opt = app.add_option("--dataset", g.dataset, "Candidate dataset JSON");
    auto* thr_opt = app.add_option("--threads", g.threads, "Worker threads")->check(CLI::PositiveNumber);
    app.add_option("--seed-dataset", g.seed_path, "Write the built-in candidate table (with variants) to a file");

    // classgroup
    Int cg_d = 0;
    auto* cg = app.add_subcommand("classgroup", "Class group, orders, ambiguous classes and genera of D");
    cg->add_option("D", cg_d, "Negative discriminant")->required()->allow_extra_args(false);

    // reduce / compose
    std::string f1, f2;
    auto* red = app.add_subcommand("reduce", "Gauss-reduce a form a,b,c");
    red->add_option("form", f1)->required();
    auto* comp = app.add_subcommand("compose", "Compose two classes of the same discriminant");
    comp->add_option("f", f1)->required();
    comp->add_option("g", f2)->required();

    // represent
    Int rep_n = 0;
    bool rep_list = false;
    auto* rep = app.add_subcommand("represent", "Does the form represent n?");
    rep->add_option("form", f1, "a,b,c")->required();
    rep->add_option("n", rep_n)->required();
    rep->add_flag("--list", rep_list, "List all (x, y)");

    // psi
    Int psi_n = 0, psi_d = 0;
    bool psi_check = false;
    auto* ps = app.add_subcommand("psi", "Representation counts of n summed over the class group of D");
    ps->add_option("n", psi_n)->required();
    ps->add_option("D", psi_d)->required();
    ps->add_flag("--check", psi_check, "Also count by enumerating every class");

    // embeds
    std::string amb, tgt;
    auto* emb = app.add_subcommand("embeds", "Is the target lattice represented by the ambient one?");
    emb->add_option("ambient", amb, "Gram rows, e.g. 1,0;0,1")->required();
    emb->add_option("target", tgt)->required();

    // norm-p
    std::string np_l;
    Int np_p = 0, np_bound = 0;
    auto* np = app.add_subcommand("norm-p", "Primitive binary sublattice with norm in pZ?");
    np->add_option("lattice", np_l)->required();
    np->add_option("p", np_p)->required();
    np->add_option("--bound", np_bound, "Norm bound for the vector search (0: default)");

    // theorems
    std::vector<std::string> th_ids;
    bool th_list = false, th_timing = false;
    auto* th = app.add_subcommand("theorems", "Run the statement harnesses over the configured grid");
    th->add_option("--id", th_ids, "Harness id (repeatable; default all)");
    th->add_flag("--list", th_list, "List harness ids");
    th->add_flag("--timing", th_timing, "Include elapsed times in JSON");

    // verify-table1
    std::vector<std::string> vt_ids;
    Int vt_pmax = 0;
    bool vt_variants = false, vt_witnesses = false, vt_stop = false;
    auto* vt = app.add_subcommand("verify-table1", "Verify the candidate isolations prime by prime");
    auto* vt_p_opt = vt->add_option("--p-max", vt_pmax, "Largest prime checked");
    vt->add_option("--id", vt_ids, "Record id (repeatable)");
    vt->add_flag("--variants", vt_variants, "Include tagged variant readings");
    vt->add_flag("--witnesses", vt_witnesses, "Emit every sublattice basis and witness (JSON)");
    vt->add_flag("--stop-early", vt_stop, "Stop at the first failing prime");

    // search
    std::string se_base;
    Int se_bound = 0, se_pmax = 0, se_budget = 0;
    bool se_nofilter = false;
    auto* se = app.add_subcommand("search", "Search quaternary lattices of small determinant for candidates");
    se->add_option("--base", se_base, "Binary base lattice, e.g. 2,1;1,2")->required();
    se->add_option("--disc-bound", se_bound, "Largest determinant")->required();
    auto* se_p_opt = se->add_option("--p-max", se_pmax, "Largest prime checked");
    auto* se_b_opt = se->add_option("--budget", se_budget, "Maximum Gram matrices examined");
    se->add_flag("--no-prefilter", se_nofilter, "Disable the odd-order determinant filter");

    // audit
    std::string au_id;
    Int au_p = 0;
    auto* au = app.add_subcommand("audit", "Saturation audit of the norm-p sublattices for one record");
    au->add_option("--id", au_id)->required();
    au->add_option("--p", au_p)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        g.cfg = load_config(g.config_path);
        if (fmt_opt->count()) g.cfg.format = g.format;
        if (data_opt->count()) g.cfg.dataset = g.dataset;
        if (thr_opt->count()) g.cfg.threads = g.cfg.grid.threads = g.threads;
        const Config& cfg = g.cfg;

        if (!g.seed_path.empty()) {
            auto recs = table1_records(true);
            write_dataset(g.seed_path, recs);
            std::cerr << "wrote " << recs.size() << " records to " << g.seed_path << "\n";
            if (app.get_subcommands().empty()) return kOk;
        }
        if (app.get_subcommands().empty()) {
            std::cerr << app.help();
            return kUsage;
        }

        if (*cg) {
            if (!is_valid_discriminant(cg_d)) throw ParseError("D must be negative and 0 or 1 mod 4");
            ClassGroup grp(cg_d);
            std::ostringstream t;
            t << "D = " << cg_d << "  h = " << grp.order() << "  group " << grp.structure() << "\n";
            for (std::size_t i = 0; i < grp.order(); ++i)
                t << "  " << grp.element(i) << "  order " << grp.element_order(i) << "  genus " << grp.genus(i)
                  << (grp.is_ambiguous(i) ? "  ambiguous" : "") << "\n";
            t << "genera: " << grp.genus_count() << "\ncomposition table (indices as listed):\n";
            for (std::size_t i = 0; i < grp.order(); ++i) {
                t << " ";
                for (std::size_t j = 0; j < grp.order(); ++j) t << " " << grp.multiply(i, j);
                t << "\n";
            }
            emit(cfg, class_group_json(grp), t.str());
            return kOk;
        }
        if (*red) {
            Form f = parse_form(f1);
            if (!f.is_positive_definite()) throw ParseError("form is not positive definite");
            auto r = reduce(f);
            Json j{{"form", form_json(f)},
                   {"reduced", form_json(r.form)},
                   {"transform", Json::array({r.transform.m00, r.transform.m01, r.transform.m10, r.transform.m11})}};
            emit(cfg, j, str(r.form) + "\n");
            return kOk;
        }
        if (*comp) {
            FormClass x(parse_form(f1)), y(parse_form(f2));
            if (x.discriminant() != y.discriminant()) throw ParseError("forms have different discriminants");
            auto z = compose(x, y);
            emit(cfg, Json{{"f", form_json(x.repr())}, {"g", form_json(y.repr())}, {"product", form_json(z.repr())}},
                 str(z.repr()) + "\n");
            return kOk;
        }
        if (*rep) {
            Form f = parse_form(f1);
            if (!f.is_positive_definite()) throw ParseError("form is not positive definite");
            if (rep_n < 1) throw ParseError("n must be positive");
            auto sols = solutions(f, rep_n);
            Json list = Json::array();
            std::string text = std::string(sols.empty() ? "no" : "yes") + "\n";
            for (const auto& s : sols) {
                list.push_back(Json{{"x", s.x}, {"y", s.y}, {"primitive", s.primitive}});
                if (rep_list)
                    text += "  (" + std::to_string(s.x) + ", " + std::to_string(s.y) + ")" +
                            (s.primitive ? " primitive" : "") + "\n";
            }
            Json j{{"form", form_json(f)}, {"n", rep_n}, {"represented", !sols.empty()}, {"count", sols.size()}};
            if (rep_list) j["solutions"] = list;
            emit(cfg, j, text);
            return sols.empty() ? kFalse : kOk;
        }
        if (*ps) {
            const Int prim = psi(psi_n, psi_d), all = total_representations(psi_n, psi_d);
            Json j{{"n", psi_n}, {"D", psi_d}, {"primitive", prim}, {"total", all}};
            std::string text = "primitive " + std::to_string(prim) + "  total " + std::to_string(all) + "\n";
            bool ok = true;
            if (psi_check) {
                Int cp = 0, ca = 0;
                const ClassGroup grp(psi_d);
                for (const auto& c : grp.elements())
                    for (const auto& s : solutions(c.repr(), psi_n)) ++ca, cp += s.primitive;
                ok = cp == prim && ca == all;
                j["counted_primitive"] = cp;
                j["counted_total"] = ca;
                j["agrees"] = ok;
                text += "counted: primitive " + std::to_string(cp) + "  total " + std::to_string(ca) +
                        (ok ? "  agrees\n" : "  MISMATCH\n");
            }
            emit(cfg, j, text);
            return ok ? kOk : kFalse;
        }
        if (*emb) {
            Lattice a = parse_lattice(amb), b = parse_lattice(tgt);
            auto e = represents_lattice(a, b);
            Json j{{"ambient", lattice_json(a)}, {"target", lattice_json(b)}, {"represented", e.has_value()}};
            if (e) j["embedding"] = matrix_json(e->t);
            emit(cfg, j, e ? "yes  T = [" + matrix_text(e->t) + "]\n" : "no\n");
            return e ? kOk : kFalse;
        }
        if (*np) {
            Lattice l = parse_lattice(np_l);
            auto r = has_norm_p_binary_sublattice(l, np_p, np_bound);
            const char* names[] = {"found", "not-found", "unknown"};
            const char* name = names[static_cast<int>(r.outcome)];
            Json j{{"lattice", lattice_json(l)}, {"p", np_p}, {"outcome", name}, {"norm_bound", r.norm_bound}};
            std::string text = std::string(name) + "\n";
            if (r.witness) {
                j["basis"] = matrix_json(r.witness->basis);
                j["sublattice"] = lattice_json(r.witness->lattice);
                text += "  basis [" + matrix_text(r.witness->basis) + "]  Gram " + format_lattice(r.witness->lattice) +
                        "\n";
            }
            emit(cfg, j, text);
            return r.outcome == SearchOutcome::Found ? kOk : r.outcome == SearchOutcome::NotFound ? kFalse : kUnknown;
        }
        if (*th) {
            if (th_list) {
                Json ids = Json::array();
                std::string text;
                for (const auto& h : harnesses()) ids.push_back(h.id), text += h.id + "\n";
                emit(cfg, ids, text);
                return kOk;
            }
            std::vector<std::string> ids = th_ids;
            if (ids.empty())
                for (const auto& h : harnesses()) ids.push_back(h.id);
            Json reports = Json::array();
            std::ostringstream t;
            bool all = true;
            for (const auto& id : ids) {
                auto r = run_harness(id, cfg.grid);
                all = all && r.passed();
                reports.push_back(r.to_json(th_timing));
                t << (r.passed() ? "PASS " : "FAIL ") << id << "  cases " << r.cases << "  failures "
                  << r.failures.size() << "  notes " << r.notes.size() << "\n";
                for (std::size_t i = 0; i < std::min<std::size_t>(r.failures.size(), 5); ++i)
                    t << "    " << r.failures[i].dump() << "\n";
            }
            emit(cfg, Json{{"schema_version", kSchemaVersion}, {"grid", cfg.grid.to_json()}, {"reports", reports}},
                 t.str());
            return all ? kOk : kFalse;
        }
        if (*vt) {
            const Int pmax = vt_p_opt->count() ? vt_pmax : cfg.p_max;
            if (pmax < 2) throw ParseError("--p-max must be at least 2");
            auto recs = select(cfg, vt_ids, vt_variants);
            Json results = Json::array();
            std::ostringstream t;
            bool all = true;
            for (const auto& r : recs) {
                auto v = verify_candidate(r, pmax, VerifyOptions{cfg.threads, vt_stop});
                all = all && v.verified();
                results.push_back(verification_json(v, vt_witnesses));
                std::size_t subs = 0;
                for (const auto& s : v.primes) subs += s.sublattices.size();
                t << r.id << "  det " << r.stated_discriminant << "  ";
                if (v.verified())
                    t << "verified (p <= " << pmax << ", " << subs << " sublattices)";
                else if (!v.non_representation_of_base)
                    t << "FAILED: represents the base";
                else
                    t << "FAILED at p = " << v.first_failing_prime();
                t << (r.variant == "printed" ? "" : "  [" + r.variant + "]") << "\n";
            }
            emit(cfg, Json{{"schema_version", kSchemaVersion}, {"p_max", pmax}, {"results", results}}, t.str());
            return all ? kOk : kFalse;
        }
        if (*se) {
            Lattice base = parse_lattice(se_base);
            SearchOptions opt;
            opt.budget = se_b_opt->count() ? se_budget : cfg.budget;
            opt.odd_order_prefilter = !se_nofilter;
            opt.threads = cfg.threads;
            const Int pmax = se_p_opt->count() ? se_pmax : cfg.p_max;
            SearchStats stats;
            auto found = search_candidates(base, se_bound, pmax, opt, &stats);
            Json recs = Json::array();
            std::ostringstream t;
            t << "examined " << stats.grams_examined << " Gram matrices, " << stats.classes << " classes, "
              << found.size() << " candidates\n";
            for (const auto& r : found) {
                recs.push_back(record_json(r));
                t << "  " << r.id << "  det " << r.stated_discriminant << "  " << format_lattice(r.candidate) << "\n";
            }
            emit(cfg,
                 Json{{"schema_version", kSchemaVersion},
                      {"base", lattice_json(base)},
                      {"disc_bound", se_bound},
                      {"p_max", pmax},
                      {"grams_examined", stats.grams_examined},
                      {"classes", stats.classes},
                      {"records", recs}},
                 t.str());
            return kOk;
        }
        if (*au) {
            auto recs = select(cfg, {au_id}, true);
            auto a = saturation_audit(recs.front(), au_p);
            std::ostringstream t;
            t << a.id << "  p = " << a.p << "  " << (a.skipped ? "skipped: " + a.reason : a.passed() ? "pass" : "FAIL")
              << "\n";
            for (const auto& e : a.entries)
                t << "  sublattice [" << matrix_text(e.sublattice_basis) << "]  index " << e.index
                  << (e.norm_in_pz ? "  norm in pZ" : "") << (e.ok ? "" : "  p | index") << "\n";
            emit(cfg, audit_json(a), t.str());
            return a.skipped ? kUnknown : a.passed() ? kOk : kFalse;
        }
    } catch (const OverflowError& e) {
        std::cerr << "overflow: " << e.what() << "\n";
        return kOverflow;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget: " << e.what() << "\n";
        return kOverflow;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const Json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
