#include "conecq/cli.hpp"

#include "conecq/checkers.hpp"
#include "conecq/numeric.hpp"
#include "conecq/problem_io.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace conecq::cli {

namespace {

struct Common {
    std::string path;
    bool json = false;
    bool dump = false;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> jobs;
    std::optional<std::size_t> face_cap;
    std::optional<std::size_t> i00_cap;
};

void add_common(CLI::App* app, Common& c) {
    app->add_option("input", c.path, "problem JSON file ('-' reads stdin)")->required();
    app->add_flag("--json", c.json, "emit machine-readable JSON");
    app->add_flag("--dump-normalized", c.dump, "print the normalized problem JSON and exit");
    app->add_option("--seed", c.seed, "override the sampling seed");
    app->add_option("--jobs", c.jobs, "worker threads for sampling");
    app->add_option("--face-cap", c.face_cap, "override the face/arrangement budget");
    app->add_option("--i00-cap", c.i00_cap, "override the biactive-pair budget");
}

ParsedInput load(const Common& c) {
    std::string text;
    if (c.path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        text = ss.str();
    } else {
        std::ifstream f(c.path);
        if (!f) throw ParseError("cannot open input file '" + c.path + "'");
        std::ostringstream ss;
        ss << f.rdbuf();
        text = ss.str();
    }
    ParsedInput in = parse_input(text);
    if (c.seed) in.sampling.seed = *c.seed;
    if (c.jobs) in.sampling.jobs = *c.jobs;
    if (c.face_cap) in.check_cfg.face_cap = *c.face_cap;
    if (c.i00_cap) in.check_cfg.i00_cap = *c.i00_cap;
    return in;
}

Verdict run_one(const ParsedInput& in, CheckKind k) {
    if (in.cs && (k == CheckKind::DirPseudo || k == CheckKind::DirQuasi))
        return check_cs_directional(*in.cs, k == CheckKind::DirPseudo, in.check_cfg);
    switch (k) {
    case CheckKind::NNAMCQ: return check_nnamcq(in.general, in.check_cfg);
    case CheckKind::FOSCMS: return check_foscms(in.general, in.check_cfg);
    case CheckKind::SOSCMS: return check_soscms(in.general, in.check_cfg);
    case CheckKind::DirPseudo: return check_dir_pseudo(in.general, in.check_cfg);
    case CheckKind::DirQuasi: return check_dir_quasi(in.general, in.check_cfg);
    }
    return {};
}

std::string fmt_vec(const QVec& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += rat_str(v[i]);
    }
    return s + "]";
}

void print_verdict_text(std::ostream& os, const std::string& label, const Verdict& v) {
    os << "  " << std::left << std::setw(12) << label << std::setw(9) << status_str(v.status)
       << "route=" << v.route << "\n";
    if (v.witness) {
        const Witness& w = *v.witness;
        if (!w.u.empty()) os << "      u     = " << fmt_vec(w.u) << "\n";
        os << "      zeta  = " << fmt_vec(w.zeta) << "\n";
        if (!w.stratum.empty()) os << "      where = " << w.stratum << "\n";
        if (!w.prefix.empty())
            os << "      sequence: " << w.prefix.size() << " terms, t0=" << rat_str(w.t0)
               << ", shrink=" << rat_str(w.shrink) << "\n";
    }
    for (const std::string& n : v.notes) os << "      note: " << n << "\n";
}

int exit_code(bool any_fails, bool any_unknown) {
    if (any_fails) return 1;
    if (any_unknown) return 2;
    return 0;
}

int do_check(const Common& c, bool conclude) {
    ParsedInput in = load(c);
    if (c.dump) {
        std::cout << dump_normalized(in);
        return 0;
    }
    bool any_fails = false, any_unknown = false;
    Json results = Json::object();
    std::ostringstream text;
    text << "problem: " << (in.name.empty() ? "(unnamed)" : in.name) << "\n";
    if (conclude) {
        ChainReport r = report_chain(in.general, in.check_cfg);
        const std::pair<const char*, const Verdict*> rows[] = {
            {"nnamcq", &r.nnamcq},     {"foscms", &r.foscms},       {"soscms", &r.soscms},
            {"dir-pseudo", &r.dir_pseudo}, {"dir-quasi", &r.dir_quasi},
        };
        for (const auto& [label, v] : rows) {
            any_fails = any_fails || v->status == Status::FAILS;
            any_unknown = any_unknown || v->status == Status::UNKNOWN;
            print_verdict_text(text, label, *v);
        }
        text << "  conclusion: " << r.conclusion << "\n";
        if (c.json) {
            Json j = chain_json(r);
            j["name"] = in.name;
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << text.str();
        }
        return exit_code(any_fails, any_unknown);
    }
    for (CheckKind k : in.checks) {
        Verdict v = run_one(in, k);
        any_fails = any_fails || v.status == Status::FAILS;
        any_unknown = any_unknown || v.status == Status::UNKNOWN;
        results[kind_str(k)] = verdict_json(v);
        print_verdict_text(text, kind_str(k), v);
    }
    if (c.json) {
        Json j;
        j["name"] = in.name;
        j["results"] = std::move(results);
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << text.str();
    }
    return exit_code(any_fails, any_unknown);
}

void print_union_text(std::ostream& os, const std::string& label, const ConeUnion& u) {
    ConeUnion cu = canonical(u);
    os << "  " << label << " (" << cu.pieces.size() << " piece"
       << (cu.pieces.size() == 1 ? "" : "s") << ")\n";
    for (const ConePiece& p : cu.pieces) {
        VCone v = canonical(dd_h_to_v(p.cone));
        os << "    piece";
        if (!p.tag.empty()) os << " [" << p.tag << "]";
        os << ": rays {";
        for (std::size_t i = 0; i < v.rays.size(); ++i)
            os << (i ? ", " : "") << fmt_vec(v.rays[i]);
        os << "}, lines {";
        for (std::size_t i = 0; i < v.lines.size(); ++i)
            os << (i ? ", " : "") << fmt_vec(v.lines[i]);
        os << "}\n";
    }
}

QVec parse_direction(const std::string& text) {
    QVec d;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) d.push_back(parse_rat(tok));
    if (d.empty()) throw ParseError("--direction: expected comma-separated rationals");
    return d;
}

int do_cones(const Common& c, const std::string& dir_str) {
    ParsedInput in = load(c);
    if (c.dump) {
        std::cout << dump_normalized(in);
        return 0;
    }
    const ProblemInstance& g = in.general;
    QVec s = eval_exact(g, g.anchor);
    SetPoint p = locate(g.lambda, s);
    ConeUnion T = tangent_cone(g.lambda, p);
    HCone R = regular_normal_cone(g.lambda, p);
    ConeUnion N = limiting_normal_cone(g.lambda, p, in.check_cfg.face_cap);
    std::optional<QVec> d;
    std::optional<ConeUnion> D;
    if (!dir_str.empty()) {
        d = parse_direction(dir_str);
        if (d->size() != s.size())
            throw DimensionError("--direction: expected " + std::to_string(s.size()) +
                                 " components");
        D = directional_normal_cone(g.lambda, p, *d, in.check_cfg.face_cap);
    }
    if (c.json) {
        Json j;
        j["name"] = in.name;
        j["point"] = vec_json(s);
        j["tangent"] = union_json(T);
        j["regular_normal"] = hcone_json(R);
        j["limiting_normal"] = union_json(N);
        if (D) {
            j["direction"] = vec_json(*d);
            j["directional_normal"] = union_json(*D);
        }
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << "problem: " << (in.name.empty() ? "(unnamed)" : in.name) << "\n";
    std::cout << "  point in the set: " << fmt_vec(s) << "\n";
    print_union_text(std::cout, "tangent cone", T);
    ConeUnion ru;
    ru.dim = R.dim;
    ru.pieces.push_back(ConePiece{R, ""});
    print_union_text(std::cout, "regular normal cone", ru);
    print_union_text(std::cout, "limiting normal cone", N);
    if (D) {
        std::cout << "  direction: " << fmt_vec(*d) << "\n";
        print_union_text(std::cout, "directional normal cone", *D);
    }
    return 0;
}

DVec to_dvec(const QVec& v) {
    DVec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = to_double(v[i]);
    return out;
}

int do_verify(const Common& c) {
    ParsedInput in = load(c);
    if (c.dump) {
        std::cout << dump_normalized(in);
        return 0;
    }
    double res_at_anchor = 0;
    ModulusTable table;
    std::string denom = "dist(P(x), Lambda)";
    if (in.kind == InputKind::KKT) {
        QVec z = in.kkt->x;
        z.insert(z.end(), in.kkt->mu.begin(), in.kkt->mu.end());
        z.insert(z.end(), in.kkt->lam.begin(), in.kkt->lam.end());
        res_at_anchor = kkt_residual(*in.kkt, to_dvec(z));
        table = empirical_modulus_kkt(*in.kkt, in.sampling);
        denom = "stationarity residual";
    } else {
        res_at_anchor = residual(in.general, to_dvec(in.general.anchor));
        table = empirical_modulus(in.general, in.sampling);
    }
    if (c.json) {
        Json j;
        j["name"] = in.name;
        j["residual_at_anchor"] = res_at_anchor;
        j["modulus"] = modulus_json(table);
        std::cout << j.dump(2) << "\n";
        return table.bounded ? 0 : 2;
    }
    std::cout << "problem: " << (in.name.empty() ? "(unnamed)" : in.name) << "\n";
    std::cout << "  residual at anchor: " << std::scientific << std::setprecision(3)
              << res_at_anchor << "  (" << denom << ")\n";
    std::cout << "  " << std::left << std::setw(12) << "radius" << std::setw(9) << "samples"
              << std::setw(14) << "worst ratio" << std::setw(14) << "mean ratio" << "\n";
    for (const ModulusRow& r : table.rows) {
        std::cout << "  " << std::left << std::setw(12) << r.radius << std::setw(9) << r.samples;
        if (r.all_feasible)
            std::cout << "(all samples feasible)\n";
        else
            std::cout << std::setw(14) << r.worst_ratio << std::setw(14) << r.mean_ratio << "\n";
    }
    std::cout << "  bounded-modulus evidence: " << (table.bounded ? "yes" : "no");
    if (table.bounded) std::cout << ", kappa_hat = " << table.kappa_hat;
    std::cout << "\n";
    return table.bounded ? 0 : 2;
}

int do_witness(const Common& c) {
    ParsedInput in = load(c);
    if (c.dump) {
        std::cout << dump_normalized(in);
        return 0;
    }
    bool any_bad = false;
    std::size_t n_witnesses = 0;
    Json arr = Json::array();
    std::ostringstream text;
    text << "problem: " << (in.name.empty() ? "(unnamed)" : in.name) << "\n";
    for (CheckKind k : in.checks) {
        Verdict v = run_one(in, k);
        if (v.status != Status::FAILS || !v.witness) continue;
        ++n_witnesses;
        bool ok = reverify(in.general, k, *v.witness, in.check_cfg);
        any_bad = any_bad || !ok;
        Json j;
        j["check"] = kind_str(k);
        j["route"] = v.route;
        j["reverified"] = ok;
        j["witness"] = witness_json(*v.witness);
        arr.push_back(std::move(j));
        text << "  " << std::left << std::setw(12) << kind_str(k)
             << (ok ? "witness re-verified" : "WITNESS REJECTED") << " (route=" << v.route
             << ")\n";
    }
    if (n_witnesses == 0) text << "  no failing checks, nothing to re-verify\n";
    if (c.json) {
        Json j;
        j["name"] = in.name;
        j["witnesses"] = std::move(arr);
        j["all_reverified"] = !any_bad;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << text.str();
    }
    return any_bad ? 1 : 0;
}

} // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"conecq: exact cone calculus and constraint-qualification checks for "
                 "structured feasibility systems"};
    app.require_subcommand(1);

    Common c_check, c_cones, c_verify, c_witness;
    bool conclude = false;
    std::string dir_str;

    CLI::App* sc_check = app.add_subcommand("check", "run constraint-qualification checks");
    add_common(sc_check, c_check);
    sc_check->add_flag("--conclude", conclude,
                       "run the full chain with cross-checks and print a conclusion");

    CLI::App* sc_cones =
        app.add_subcommand("cones", "print tangent and normal cones at the anchor");
    add_common(sc_cones, c_cones);
    sc_cones->add_option("--direction", dir_str,
                         "comma-separated rational direction for the directional normal cone");

    CLI::App* sc_verify =
        app.add_subcommand("verify", "floating-point residuals and empirical modulus table");
    add_common(sc_verify, c_verify);

    CLI::App* sc_witness =
        app.add_subcommand("witness", "re-derive failing checks and re-verify their witnesses");
    add_common(sc_witness, c_witness);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 3;
    }
    try {
        if (sc_check->parsed()) return do_check(c_check, conclude);
        if (sc_cones->parsed()) return do_cones(c_cones, dir_str);
        if (sc_verify->parsed()) return do_verify(c_verify);
        if (sc_witness->parsed()) return do_witness(c_witness);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 3;
}

} // namespace conecq::cli
