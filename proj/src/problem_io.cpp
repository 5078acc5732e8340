#include "conecq/problem_io.hpp"

#include <initializer_list>

namespace conecq {

namespace {

void expect_keys(const Json& j, const std::string& where,
                 std::initializer_list<const char*> allowed,
                 std::initializer_list<const char*> required) {
    if (!j.is_object()) throw ParseError(where + ": expected an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed)
            if (it.key() == k) ok = true;
        if (!ok) throw ParseError("unknown key '" + it.key() + "' in " + where);
    }
    for (const char* k : required)
        if (!j.contains(k)) throw ParseError(where + ": missing key '" + k + "'");
}

Rat rat_of(const Json& j, const std::string& where) {
    try {
        if (j.is_string()) return parse_rat(j.get<std::string>());
        if (j.is_number_integer() || j.is_number_unsigned())
            return Rat(static_cast<long>(j.get<long long>()));
        if (j.is_number_float()) return from_double(j.get<double>());
    } catch (const Error& e) {
        throw ParseError(where + ": " + e.what());
    }
    throw ParseError(where + ": expected a rational (string \"p/q\", integer, or float)");
}

QVec vec_of(const Json& j, const std::string& where) {
    if (!j.is_array()) throw ParseError(where + ": expected an array");
    QVec v;
    for (const Json& e : j) v.push_back(rat_of(e, where));
    return v;
}

QMat mat_of(const Json& j, const std::string& where) {
    if (!j.is_array()) throw ParseError(where + ": expected an array of rows");
    QMat m;
    for (const Json& r : j) m.push_back(vec_of(r, where));
    return m;
}

std::size_t size_of(const Json& j, const std::string& where) {
    if (!j.is_number_integer() && !j.is_number_unsigned())
        throw ParseError(where + ": expected a nonnegative integer");
    long long v = j.get<long long>();
    if (v < 0) throw ParseError(where + ": expected a nonnegative integer");
    return static_cast<std::size_t>(v);
}

FunctionAtom atom_of(const Json& j, const std::string& where) {
    if (!j.is_object() || !j.contains("type"))
        throw ParseError(where + ": expected an atom object with a 'type'");
    std::string type = j.at("type").get<std::string>();
    if (type == "affine") {
        expect_keys(j, where + " (affine atom)", {"type", "A", "c"}, {"type", "A", "c"});
        AffineAtom a;
        a.A = mat_of(j.at("A"), where + ".A");
        a.c = vec_of(j.at("c"), where + ".c");
        return a;
    }
    if (type == "quadratic") {
        expect_keys(j, where + " (quadratic atom)", {"type", "Q", "A", "c"},
                    {"type", "Q", "A", "c"});
        QuadAtom q;
        if (!j.at("Q").is_array()) throw ParseError(where + ".Q: expected an array of matrices");
        for (const Json& m : j.at("Q")) q.Q.push_back(mat_of(m, where + ".Q"));
        q.A = mat_of(j.at("A"), where + ".A");
        q.c = vec_of(j.at("c"), where + ".c");
        return q;
    }
    throw ParseError(where + ": unknown atom type '" + type + "'");
}

std::vector<FunctionAtom> atoms_of(const Json& j, const std::string& where) {
    if (!j.is_array()) throw ParseError(where + ": expected an array of atoms");
    std::vector<FunctionAtom> out;
    for (const Json& a : j) out.push_back(atom_of(a, where));
    return out;
}

Factor factor_of(const Json& j, const std::string& where) {
    if (!j.is_object() || !j.contains("type"))
        throw ParseError(where + ": expected a factor object with a 'type'");
    std::string type = j.at("type").get<std::string>();
    if (type == "zero") {
        expect_keys(j, where + " (zero factor)", {"type", "dim"}, {"type", "dim"});
        ZeroFactor f{size_of(j.at("dim"), where + ".dim")};
        if (f.dim == 0) throw ParseError(where + ": factor dimension must be positive");
        return f;
    }
    if (type == "orthant") {
        expect_keys(j, where + " (orthant factor)", {"type", "dim", "sign"},
                    {"type", "dim", "sign"});
        OrthantFactor f;
        f.dim = size_of(j.at("dim"), where + ".dim");
        if (f.dim == 0) throw ParseError(where + ": factor dimension must be positive");
        long long s = j.at("sign").is_number_integer() ? j.at("sign").get<long long>() : 0;
        if (s != 1 && s != -1) throw ParseError(where + ".sign: expected 1 or -1");
        f.sign = static_cast<int>(s);
        return f;
    }
    if (type == "union") {
        expect_keys(j, where + " (union factor)", {"type", "dim", "pieces"},
                    {"type", "dim", "pieces"});
        UnionFactor f;
        f.dim = size_of(j.at("dim"), where + ".dim");
        if (f.dim == 0) throw ParseError(where + ": factor dimension must be positive");
        if (!j.at("pieces").is_array() || j.at("pieces").empty())
            throw ParseError(where + ".pieces: expected a nonempty array");
        for (const Json& p : j.at("pieces")) {
            expect_keys(p, where + ".pieces[]", {"rows", "rhs"}, {"rows", "rhs"});
            Polyhedron poly;
            poly.rows = mat_of(p.at("rows"), where + ".pieces[].rows");
            poly.rhs = vec_of(p.at("rhs"), where + ".pieces[].rhs");
            if (poly.rows.size() != poly.rhs.size())
                throw ParseError(where + ".pieces[]: rows and rhs lengths differ");
            for (const QVec& r : poly.rows)
                if (r.size() != f.dim)
                    throw ParseError(where + ".pieces[]: row width differs from factor dim");
            f.pieces.push_back(std::move(poly));
        }
        return f;
    }
    if (type == "complementarity") {
        expect_keys(j, where + " (complementarity factor)", {"type"}, {"type"});
        return ComplFactor{};
    }
    throw ParseError(where + ": unknown factor type '" + type + "'");
}

CheckKind check_of(const std::string& name, const std::string& where) {
    for (CheckKind k : {CheckKind::NNAMCQ, CheckKind::FOSCMS, CheckKind::SOSCMS,
                        CheckKind::DirPseudo, CheckKind::DirQuasi})
        if (name == kind_str(k)) return k;
    throw ParseError(where + ": unknown check '" + name + "'");
}

void config_of(const Json& j, ParsedInput& in) {
    expect_keys(j, "config",
                {"face_cap", "i00_cap", "soscms_samples", "falsifier", "seed", "radii",
                 "samples_per_radius", "projection_tol", "residual_floor", "jobs", "nm_iters",
                 "nm_starts"},
                {});
    if (j.contains("face_cap")) in.check_cfg.face_cap = size_of(j.at("face_cap"), "config.face_cap");
    if (j.contains("i00_cap")) in.check_cfg.i00_cap = size_of(j.at("i00_cap"), "config.i00_cap");
    if (j.contains("soscms_samples"))
        in.check_cfg.soscms_samples = size_of(j.at("soscms_samples"), "config.soscms_samples");
    if (j.contains("falsifier")) {
        const Json& f = j.at("falsifier");
        expect_keys(f, "config.falsifier", {"t0", "shrink", "depth"}, {});
        if (f.contains("t0")) in.check_cfg.falsifier.t0 = rat_of(f.at("t0"), "config.falsifier.t0");
        if (f.contains("shrink"))
            in.check_cfg.falsifier.shrink = rat_of(f.at("shrink"), "config.falsifier.shrink");
        if (f.contains("depth"))
            in.check_cfg.falsifier.depth = size_of(f.at("depth"), "config.falsifier.depth");
        if (sgn(in.check_cfg.falsifier.t0) <= 0 || sgn(in.check_cfg.falsifier.shrink) <= 0 ||
            cmp(in.check_cfg.falsifier.shrink, Rat(1)) >= 0)
            throw ParseError("config.falsifier: need t0 > 0 and 0 < shrink < 1");
    }
    if (j.contains("seed")) in.sampling.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("radii")) {
        if (!j.at("radii").is_array() || j.at("radii").empty())
            throw ParseError("config.radii: expected a nonempty array of positive numbers");
        in.sampling.radii.clear();
        for (const Json& r : j.at("radii")) {
            double v = r.get<double>();
            if (!(v > 0)) throw ParseError("config.radii: radii must be positive");
            in.sampling.radii.push_back(v);
        }
    }
    if (j.contains("samples_per_radius"))
        in.sampling.samples_per_radius =
            size_of(j.at("samples_per_radius"), "config.samples_per_radius");
    if (j.contains("projection_tol")) in.sampling.projection_tol = j.at("projection_tol").get<double>();
    if (j.contains("residual_floor")) in.sampling.residual_floor = j.at("residual_floor").get<double>();
    if (j.contains("jobs")) in.sampling.jobs = size_of(j.at("jobs"), "config.jobs");
    if (j.contains("nm_iters")) in.sampling.nm_iters = size_of(j.at("nm_iters"), "config.nm_iters");
    if (j.contains("nm_starts")) in.sampling.nm_starts = size_of(j.at("nm_starts"), "config.nm_starts");
}

} // namespace

ParsedInput parse_input(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const std::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("top level: expected an object");
    if (!j.contains("schema") || !j.at("schema").is_number_integer() ||
        j.at("schema").get<long long>() != 1)
        throw ParseError("top level: expected \"schema\": 1");
    if (!j.contains("kind") || !j.at("kind").is_string())
        throw ParseError("top level: missing \"kind\"");
    std::string kind = j.at("kind").get<std::string>();

    ParsedInput in;
    if (kind == "general") {
        expect_keys(j, "top level",
                    {"schema", "kind", "name", "atoms", "lambda", "anchor", "checks", "config"},
                    {"schema", "kind", "atoms", "lambda", "anchor"});
        in.kind = InputKind::General;
        in.general.atoms = atoms_of(j.at("atoms"), "atoms");
        if (!j.at("lambda").is_array() || j.at("lambda").empty())
            throw ParseError("lambda: expected a nonempty array of factors");
        for (const Json& f : j.at("lambda"))
            in.general.lambda.factors.push_back(factor_of(f, "lambda[]"));
        in.general.anchor = vec_of(j.at("anchor"), "anchor");
    } else if (kind == "cs") {
        expect_keys(j, "top level",
                    {"schema", "kind", "name", "H", "Phi", "Psi", "anchor", "checks", "config"},
                    {"schema", "kind", "Phi", "Psi", "anchor"});
        in.kind = InputKind::CS;
        CSInstance cs;
        if (j.contains("H")) cs.H = atoms_of(j.at("H"), "H");
        cs.Phi = atoms_of(j.at("Phi"), "Phi");
        cs.Psi = atoms_of(j.at("Psi"), "Psi");
        cs.anchor = vec_of(j.at("anchor"), "anchor");
        in.cs = std::move(cs);
    } else if (kind == "kkt") {
        expect_keys(j, "top level",
                    {"schema", "kind", "name", "f", "g", "h", "x", "mu", "lam", "checks", "config"},
                    {"schema", "kind", "f", "x"});
        in.kind = InputKind::KKT;
        KKTInstance k;
        k.f = atom_of(j.at("f"), "f");
        if (j.contains("g")) k.g = atoms_of(j.at("g"), "g");
        if (j.contains("h")) k.h = atoms_of(j.at("h"), "h");
        k.x = vec_of(j.at("x"), "x");
        if (j.contains("mu")) k.mu = vec_of(j.at("mu"), "mu");
        if (j.contains("lam")) k.lam = vec_of(j.at("lam"), "lam");
        in.kkt = std::move(k);
    } else {
        throw ParseError("top level: unknown kind '" + kind + "'");
    }

    if (j.contains("name")) {
        if (!j.at("name").is_string()) throw ParseError("name: expected a string");
        in.name = j.at("name").get<std::string>();
    }
    if (j.contains("checks")) {
        if (!j.at("checks").is_array()) throw ParseError("checks: expected an array");
        for (const Json& c : j.at("checks")) {
            if (!c.is_string()) throw ParseError("checks: expected strings");
            in.checks.push_back(check_of(c.get<std::string>(), "checks"));
        }
    }
    if (in.checks.empty())
        in.checks = {CheckKind::NNAMCQ, CheckKind::FOSCMS, CheckKind::SOSCMS, CheckKind::DirPseudo,
                     CheckKind::DirQuasi};
    if (j.contains("config")) config_of(j.at("config"), in);

    // materialize + validate the general embedding
    if (in.kind == InputKind::KKT) {
        in.kkt->name = in.name;
        validate(*in.kkt);
        in.cs = kkt_to_cs(*in.kkt);
    }
    if (in.cs) {
        in.cs->name = in.name;
        validate(*in.cs);
        in.general = cs_to_general(*in.cs);
    }
    in.general.name = in.name;
    validate(in.general);
    return in;
}

// --- emission --------------------------------------------------------------------

Json rat_json(const Rat& r) { return rat_str(r); }

Json vec_json(const QVec& v) {
    Json a = Json::array();
    for (const Rat& x : v) a.push_back(rat_json(x));
    return a;
}

Json mat_json(const QMat& m) {
    Json a = Json::array();
    for (const QVec& r : m) a.push_back(vec_json(r));
    return a;
}

Json dvec_json(const std::vector<double>& v) {
    Json a = Json::array();
    for (double x : v) a.push_back(x);
    return a;
}

Json vcone_json(const VCone& c) {
    VCone cc = canonical(c);
    Json j;
    j["dim"] = cc.dim;
    j["rays"] = mat_json(cc.rays);
    j["lines"] = mat_json(cc.lines);
    return j;
}

Json hcone_json(const HCone& c) {
    HCone cc = canonical(c);
    Json j;
    j["dim"] = cc.dim;
    j["ineq"] = mat_json(cc.ineq);
    j["eq"] = mat_json(cc.eq);
    return j;
}

Json union_json(const ConeUnion& u) {
    ConeUnion cu = canonical(u);
    Json pieces = Json::array();
    for (const ConePiece& p : cu.pieces) {
        Json pj = vcone_json(dd_h_to_v(p.cone));
        pj["tag"] = p.tag;
        pieces.push_back(std::move(pj));
    }
    Json j;
    j["dim"] = cu.dim;
    j["pieces"] = std::move(pieces);
    return j;
}

Json witness_json(const Witness& w) {
    Json j;
    if (!w.u.empty()) j["u"] = vec_json(w.u);
    j["zeta"] = vec_json(w.zeta);
    if (!w.stratum.empty()) j["stratum"] = w.stratum;
    if (!w.prefix.empty()) {
        j["t0"] = rat_json(w.t0);
        j["shrink"] = rat_json(w.shrink);
        Json seq = Json::array();
        for (const SeqEntry& e : w.prefix) {
            Json ej;
            ej["t"] = rat_json(e.t);
            ej["x"] = vec_json(e.x);
            ej["s"] = vec_json(e.s);
            ej["zeta"] = vec_json(e.zeta);
            seq.push_back(std::move(ej));
        }
        j["sequence"] = std::move(seq);
    }
    return j;
}

Json verdict_json(const Verdict& v) {
    Json j;
    j["status"] = status_str(v.status);
    j["route"] = v.route;
    if (v.witness) j["witness"] = witness_json(*v.witness);
    Json notes = Json::array();
    for (const std::string& n : v.notes) notes.push_back(n);
    j["notes"] = std::move(notes);
    return j;
}

Json chain_json(const ChainReport& r) {
    Json checks;
    checks["nnamcq"] = verdict_json(r.nnamcq);
    checks["foscms"] = verdict_json(r.foscms);
    checks["soscms"] = verdict_json(r.soscms);
    checks["dir-pseudo"] = verdict_json(r.dir_pseudo);
    checks["dir-quasi"] = verdict_json(r.dir_quasi);
    Json j;
    j["checks"] = std::move(checks);
    j["conclusion"] = r.conclusion;
    j["subregular"] = r.subregular;
    j["strong"] = r.strong;
    return j;
}

Json modulus_json(const ModulusTable& t) {
    Json rows = Json::array();
    for (const ModulusRow& r : t.rows) {
        Json rj;
        rj["radius"] = r.radius;
        rj["samples"] = r.samples;
        rj["worst_ratio"] = r.worst_ratio;
        rj["mean_ratio"] = r.mean_ratio;
        rj["all_feasible"] = r.all_feasible;
        rows.push_back(std::move(rj));
    }
    Json j;
    j["rows"] = std::move(rows);
    j["bounded"] = t.bounded;
    j["kappa_hat"] = t.kappa_hat;
    return j;
}

namespace {

Json atom_json(const FunctionAtom& a) {
    Json j;
    if (const auto* af = std::get_if<AffineAtom>(&a)) {
        j["type"] = "affine";
        j["A"] = mat_json(af->A);
        j["c"] = vec_json(af->c);
        return j;
    }
    if (const auto* q = std::get_if<QuadAtom>(&a)) {
        j["type"] = "quadratic";
        Json qs = Json::array();
        for (const QMat& m : q->Q) qs.push_back(mat_json(m));
        j["Q"] = std::move(qs);
        j["A"] = mat_json(q->A);
        j["c"] = vec_json(q->c);
        return j;
    }
    throw CapabilityError("numeric-only atoms cannot be serialized");
}

Json atoms_json(const std::vector<FunctionAtom>& atoms) {
    Json a = Json::array();
    for (const FunctionAtom& x : atoms) a.push_back(atom_json(x));
    return a;
}

Json factor_json(const Factor& f) {
    Json j;
    if (const auto* z = std::get_if<ZeroFactor>(&f)) {
        j["type"] = "zero";
        j["dim"] = z->dim;
        return j;
    }
    if (const auto* o = std::get_if<OrthantFactor>(&f)) {
        j["type"] = "orthant";
        j["dim"] = o->dim;
        j["sign"] = o->sign;
        return j;
    }
    if (const auto* u = std::get_if<UnionFactor>(&f)) {
        j["type"] = "union";
        j["dim"] = u->dim;
        Json pieces = Json::array();
        for (const Polyhedron& p : u->pieces) {
            Json pj;
            pj["rows"] = mat_json(p.rows);
            pj["rhs"] = vec_json(p.rhs);
            pieces.push_back(std::move(pj));
        }
        j["pieces"] = std::move(pieces);
        return j;
    }
    j["type"] = "complementarity";
    return j;
}

} // namespace

std::string dump_normalized(const ParsedInput& in) {
    Json j;
    j["schema"] = 1;
    j["name"] = in.name;
    if (in.kind == InputKind::KKT) {
        j["kind"] = "kkt";
        j["f"] = atom_json(in.kkt->f);
        j["g"] = atoms_json(in.kkt->g);
        j["h"] = atoms_json(in.kkt->h);
        j["x"] = vec_json(in.kkt->x);
        j["mu"] = vec_json(in.kkt->mu);
        j["lam"] = vec_json(in.kkt->lam);
    } else if (in.kind == InputKind::CS) {
        j["kind"] = "cs";
        j["H"] = atoms_json(in.cs->H);
        j["Phi"] = atoms_json(in.cs->Phi);
        j["Psi"] = atoms_json(in.cs->Psi);
        j["anchor"] = vec_json(in.cs->anchor);
    } else {
        j["kind"] = "general";
        j["atoms"] = atoms_json(in.general.atoms);
        Json factors = Json::array();
        for (const Factor& f : in.general.lambda.factors) factors.push_back(factor_json(f));
        j["lambda"] = std::move(factors);
        j["anchor"] = vec_json(in.general.anchor);
    }
    Json checks = Json::array();
    for (CheckKind k : in.checks) checks.push_back(kind_str(k));
    j["checks"] = std::move(checks);
    Json cfg;
    cfg["face_cap"] = in.check_cfg.face_cap;
    cfg["i00_cap"] = in.check_cfg.i00_cap;
    cfg["soscms_samples"] = in.check_cfg.soscms_samples;
    Json fal;
    fal["t0"] = rat_json(in.check_cfg.falsifier.t0);
    fal["shrink"] = rat_json(in.check_cfg.falsifier.shrink);
    fal["depth"] = in.check_cfg.falsifier.depth;
    cfg["falsifier"] = std::move(fal);
    cfg["seed"] = in.sampling.seed;
    cfg["radii"] = dvec_json(in.sampling.radii);
    cfg["samples_per_radius"] = in.sampling.samples_per_radius;
    cfg["projection_tol"] = in.sampling.projection_tol;
    cfg["residual_floor"] = in.sampling.residual_floor;
    cfg["jobs"] = in.sampling.jobs;
    cfg["nm_iters"] = in.sampling.nm_iters;
    cfg["nm_starts"] = in.sampling.nm_starts;
    j["config"] = std::move(cfg);
    return j.dump(2) + "\n";
}

} // namespace conecq
