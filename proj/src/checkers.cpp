#include "conecq/checkers.hpp"

#include <algorithm>
#include <map>

namespace conecq {

const char* status_str(Status s) {
    switch (s) {
    case Status::HOLDS: return "HOLDS";
    case Status::FAILS: return "FAILS";
    default: return "UNKNOWN";
    }
}

const char* kind_str(CheckKind k) {
    switch (k) {
    case CheckKind::NNAMCQ: return "nnamcq";
    case CheckKind::FOSCMS: return "foscms";
    case CheckKind::SOSCMS: return "soscms";
    case CheckKind::DirPseudo: return "dir-pseudo";
    default: return "dir-quasi";
    }
}

namespace {

// {zeta : J^T zeta = 0}
HCone kernel_cone(const QMat& J, std::size_t n, std::size_t m) {
    HCone k;
    k.dim = m;
    k.eq = transpose(J, n);
    return k;
}

Rat norm1(const QVec& v) {
    Rat s = 0;
    for (const Rat& x : v) s += abs(x);
    return s;
}

std::string join_tags(const std::vector<std::string>& tags) {
    std::string out;
    for (const std::string& t : tags) {
        if (!out.empty()) out += "|";
        out += t;
    }
    return out;
}

} // namespace

DirectionAnalysis analyze_directions(const ProblemInstance& inst, const CheckConfig& cfg) {
    const std::size_t n = in_dim(inst);
    const std::size_t m = out_dim(inst);
    QMat J = jacobian(inst, inst.anchor);
    SetPoint sp = anchor_point(inst);
    ConeUnion T = tangent_cone(inst.lambda, sp);

    std::vector<HCone> U;
    std::vector<std::string> utags;
    bool nontrivial = false;
    for (const ConePiece& piece : T.pieces) {
        HCone u = canonical(linear_preimage(J, n, piece.cone));
        if (!is_trivial(u)) nontrivial = true;
        U.push_back(std::move(u));
        utags.push_back(piece.tag);
    }

    DirectionAnalysis an;
    if (!nontrivial) {
        an.trivial = true;
        return an;
    }

    HCone K = kernel_cone(J, n, m);
    for (const VCone& st : arrangement_strata(U, cfg.face_cap)) {
        DirStratum ds;
        ds.gens = st;
        ds.rep = relint_point(st);
        std::vector<std::string> containing;
        for (std::size_t i = 0; i < U.size(); ++i)
            if (contains(U[i], ds.rep)) containing.push_back(utags[i]);
        ds.tag = join_tags(containing);

        QVec d = mat_vec(J, ds.rep);
        ConeUnion D = directional_normal_cone(inst.lambda, sp, d, cfg.face_cap);
        std::map<std::string, std::pair<VCone, std::string>> viol;
        for (const ConePiece& p : D.pieces) {
            VCone V = canonical(dd_h_to_v(intersect(p.cone, K)));
            if (is_trivial(V)) continue;
            viol.emplace(cone_key(V), std::make_pair(V, p.tag));
        }
        for (auto& [key, vp] : viol) {
            ds.violation.push_back(std::move(vp.first));
            ds.violation_tags.push_back(std::move(vp.second));
        }
        an.strata.push_back(std::move(ds));
    }
    return an;
}

Verdict check_nnamcq(const ProblemInstance& inst, const CheckConfig& cfg) {
    Verdict v;
    if (!exact(inst)) {
        v.notes.push_back("map contains numeric-only atoms; exact analysis unavailable");
        return v;
    }
    try {
        const std::size_t n = in_dim(inst);
        const std::size_t m = out_dim(inst);
        QMat J = jacobian(inst, inst.anchor);
        SetPoint sp = anchor_point(inst);
        HCone K = kernel_cone(J, n, m);
        ConeUnion N = limiting_normal_cone(inst.lambda, sp, cfg.face_cap);
        for (const ConePiece& p : N.pieces) {
            VCone V = canonical(dd_h_to_v(intersect(p.cone, K)));
            if (is_trivial(V)) continue;
            v.status = Status::FAILS;
            v.route = kRoutePointCone;
            Witness w;
            w.zeta = relint_point(V);
            w.stratum = p.tag;
            v.witness = std::move(w);
            v.notes.push_back("nonzero multiplier in the limiting normal cone lies in the jacobian kernel");
            return v;
        }
        v.status = Status::HOLDS;
        v.route = kRoutePointCone;
        return v;
    } catch (const CapacityError& e) {
        v.notes.push_back(std::string("budget exceeded: ") + e.what());
        return v;
    }
}

namespace {

Verdict foscms_from(const ProblemInstance& inst, const DirectionAnalysis& an) {
    Verdict v;
    (void)inst;
    if (an.trivial) {
        v.status = Status::HOLDS;
        v.route = kRouteFirstOrder;
        v.notes.push_back("linearized cone is trivial; the condition holds vacuously");
        return v;
    }
    for (const DirStratum& st : an.strata) {
        if (st.violation.empty()) continue;
        v.status = Status::FAILS;
        v.route = kRouteFirstOrder;
        Witness w;
        w.u = st.rep;
        w.zeta = relint_point(st.violation.front());
        w.stratum = st.tag + " / " + st.violation_tags.front();
        v.witness = std::move(w);
        v.notes.push_back("directional multiplier survives on stratum " + st.tag);
        return v;
    }
    v.status = Status::HOLDS;
    v.route = kRouteFirstOrder;
    return v;
}

struct SecondOrderScan {
    enum { PASS, FAIL, UNDECIDED } result = PASS;
    Witness witness;
    std::vector<std::string> notes;
};

SecondOrderScan second_order_scan(const ProblemInstance& inst, const DirectionAnalysis& an,
                                  const CheckConfig& cfg) {
    SecondOrderScan sc;
    bool undecided = false;
    for (const DirStratum& st : an.strata) {
        if (st.violation.empty()) continue;
        QVec lrep = second_derivative(inst, inst.anchor, st.rep);
        // a full line of multipliers always contains one with a nonnegative pairing
        for (std::size_t vi = 0; vi < st.violation.size(); ++vi) {
            const VCone& V = st.violation[vi];
            for (const QVec& ll : V.lines) {
                sc.result = SecondOrderScan::FAIL;
                sc.witness.u = st.rep;
                sc.witness.zeta = sgn(dot(ll, lrep)) >= 0 ? ll : neg(ll);
                sc.witness.stratum = st.tag + " / " + st.violation_tags[vi];
                return sc;
            }
        }
        if (cone_dim(st.gens) <= 1) {
            // the curvature term scales by a positive factor along the stratum
            // (and is even, so a line stratum is covered by its representative)
            for (std::size_t vi = 0; vi < st.violation.size(); ++vi)
                for (const QVec& r : st.violation[vi].rays)
                    if (sgn(dot(r, lrep)) >= 0) {
                        sc.result = SecondOrderScan::FAIL;
                        sc.witness.u = st.rep;
                        sc.witness.zeta = r;
                        sc.witness.stratum = st.tag + " / " + st.violation_tags[vi];
                        return sc;
                    }
        } else {
            // curvature varies over the stratum: exact spot checks only
            for (unsigned salt = 0; salt < cfg.soscms_samples; ++salt) {
                QVec us = relint_point(st.gens, salt);
                QVec ls = second_derivative(inst, inst.anchor, us);
                for (std::size_t vi = 0; vi < st.violation.size(); ++vi)
                    for (const QVec& r : st.violation[vi].rays)
                        if (sgn(dot(r, ls)) >= 0) {
                            sc.result = SecondOrderScan::FAIL;
                            sc.witness.u = us;
                            sc.witness.zeta = r;
                            sc.witness.stratum = st.tag + " / " + st.violation_tags[vi];
                            return sc;
                        }
            }
            undecided = true;
            sc.notes.push_back("stratum " + st.tag +
                               " has dimension >= 2; spot checks found no violation");
        }
    }
    if (undecided) sc.result = SecondOrderScan::UNDECIDED;
    return sc;
}

Verdict soscms_from(const ProblemInstance& inst, const DirectionAnalysis& an,
                    const CheckConfig& cfg) {
    Verdict v;
    if (an.trivial) {
        v.status = Status::HOLDS;
        v.route = kRouteSecondOrder;
        v.notes.push_back("linearized cone is trivial; the condition holds vacuously");
        return v;
    }
    SecondOrderScan sc = second_order_scan(inst, an, cfg);
    v.notes = sc.notes;
    if (sc.result == SecondOrderScan::FAIL) {
        v.status = Status::FAILS;
        v.route = kRouteSecondOrder;
        v.witness = sc.witness;
        v.notes.push_back("multiplier with nonnegative curvature pairing");
    } else if (sc.result == SecondOrderScan::PASS) {
        v.status = Status::HOLDS;
        v.route = kRouteSecondOrder;
    } else {
        v.route = kRouteNone;
    }
    return v;
}

} // namespace

Verdict check_foscms(const ProblemInstance& inst, const CheckConfig& cfg) {
    Verdict v;
    if (!exact(inst)) {
        v.notes.push_back("map contains numeric-only atoms; exact analysis unavailable");
        return v;
    }
    try {
        return foscms_from(inst, analyze_directions(inst, cfg));
    } catch (const CapacityError& e) {
        v.notes.push_back(std::string("budget exceeded: ") + e.what());
        return v;
    }
}

Verdict check_soscms(const ProblemInstance& inst, const CheckConfig& cfg) {
    Verdict v;
    if (!exact(inst)) {
        v.notes.push_back("map contains numeric-only atoms; exact analysis unavailable");
        return v;
    }
    if (affine_map(inst)) {
        Verdict f = check_foscms(inst, cfg);
        if (f.status != Status::UNKNOWN) f.route = kRouteSecondOrder;
        f.notes.push_back("map is affine: the curvature term vanishes identically and the "
                          "condition coincides with the first-order one");
        return f;
    }
    try {
        return soscms_from(inst, analyze_directions(inst, cfg), cfg);
    } catch (const CapacityError& e) {
        v.notes.push_back(std::string("budget exceeded: ") + e.what());
        return v;
    }
}

// --- exact sequence falsifier --------------------------------------------------

namespace {

std::optional<std::vector<SeqEntry>>
falsify_with_selector(const ProblemInstance& inst, const QVec& u, const QVec& zeta, bool pseudo,
                      const FalsifierConfig& fc, const std::vector<std::optional<std::size_t>>& sel,
                      const QVec& ybar) {
    std::vector<SeqEntry> out;
    std::vector<Rat> ds, dz, dj, ts;
    Rat t = fc.t0;
    for (std::size_t k = 0; k < fc.depth; ++k, t *= fc.shrink) {
        QVec x = add(inst.anchor, scale(t, u));
        QVec y = eval_exact(inst, x);
        QVec s, zk;
        try {
            s = project_exact(inst.lambda, y, sel);
            SetPoint sp = locate(inst.lambda, s);
            zk = project_cone(regular_normal_cone(inst.lambda, sp), zeta);
        } catch (const Error&) {
            return std::nullopt;
        }
        if (is_zero(zk)) return std::nullopt;
        QVec resid = sub(y, s);
        if (pseudo) {
            if (sgn(dot(zeta, resid)) <= 0) return std::nullopt;
        } else {
            for (std::size_t i = 0; i < zeta.size(); ++i)
                if (sgn(zeta[i]) != 0 && sgn(zeta[i] * resid[i]) <= 0) return std::nullopt;
        }
        ds.push_back(norm1(sub(s, ybar)));
        dz.push_back(norm1(sub(zk, zeta)));
        dj.push_back(norm1(vec_mat(zk, jacobian(inst, x))));
        ts.push_back(t);
        out.push_back({t, std::move(x), std::move(s), std::move(zk)});
    }
    // geometric envelopes certify the three convergence requirements:
    // |s_k - ybar|, |zeta_k - zeta| and |J(x_k)^T zeta_k| all decay at least
    // linearly in t_k, with constants fixed by the first entry
    auto envelope_ok = [&](const std::vector<Rat>& d) {
        Rat slope = Rat(2) * d[0] / fc.t0;
        Rat M = cmp(slope, Rat(1)) > 0 ? slope : Rat(1);
        for (std::size_t k = 0; k < d.size(); ++k)
            if (cmp(d[k], M * ts[k]) > 0) return false;
        return true;
    };
    if (!envelope_ok(ds) || !envelope_ok(dz) || !envelope_ok(dj)) return std::nullopt;
    return out;
}

} // namespace

std::optional<std::vector<SeqEntry>> sequence_falsifier(const ProblemInstance& inst, const QVec& u,
                                                        const QVec& zeta, bool pseudo,
                                                        const FalsifierConfig& fc) {
    if (!exact(inst) || is_zero(u) || is_zero(zeta) || fc.depth == 0) return std::nullopt;
    if (sgn(fc.t0) <= 0 || sgn(fc.shrink) <= 0 || cmp(fc.shrink, Rat(1)) >= 0) return std::nullopt;
    QVec ybar = eval_exact(inst, inst.anchor);

    std::vector<std::vector<std::optional<std::size_t>>> selectors;
    selectors.push_back({});
    const std::size_t F = inst.lambda.factors.size();
    for (std::size_t fi = 0; fi < F && selectors.size() < 16; ++fi) {
        std::size_t choices = 0;
        if (const auto* uf = std::get_if<UnionFactor>(&inst.lambda.factors[fi]))
            choices = uf->pieces.size();
        else if (std::holds_alternative<ComplFactor>(inst.lambda.factors[fi]))
            choices = 2;
        for (std::size_t c = 0; c < choices && selectors.size() < 16; ++c) {
            std::vector<std::optional<std::size_t>> sel(F);
            sel[fi] = c;
            selectors.push_back(std::move(sel));
        }
    }
    for (const auto& sel : selectors) {
        auto seq = falsify_with_selector(inst, u, zeta, pseudo, fc, sel, ybar);
        if (seq) return seq;
    }
    return std::nullopt;
}

// --- directional quasi-/pseudo-normality cascade -------------------------------

namespace {

std::vector<QVec> multiplier_candidates(const VCone& V, std::size_t cap = 6) {
    std::vector<QVec> out;
    std::map<std::string, bool> seen;
    auto push = [&](QVec z) {
        if (out.size() >= cap || is_zero(z)) return;
        std::string key;
        for (const Rat& x : z) key += rat_str(x) + ",";
        if (seen.emplace(key, true).second) out.push_back(std::move(z));
    };
    push(relint_point(V));
    for (const QVec& r : V.rays) push(r);
    for (const QVec& l : V.lines) {
        push(l);
        push(neg(l));
    }
    return out;
}

Verdict directional_cascade(const ProblemInstance& inst, const CheckConfig& cfg, bool pseudo,
                            const DirectionAnalysis* pre) {
    Verdict v;
    if (!exact(inst)) {
        v.notes.push_back("map contains numeric-only atoms; exact analysis unavailable");
        return v;
    }
    DirectionAnalysis an;
    bool have_an = false;
    try {
        an = pre ? *pre : analyze_directions(inst, cfg);
        have_an = true;
    } catch (const CapacityError& e) {
        v.notes.push_back(std::string("budget exceeded: ") + e.what());
    }

    if (have_an) {
        Verdict f = foscms_from(inst, an);
        if (f.status == Status::HOLDS) {
            v.status = Status::HOLDS;
            v.route = kRouteFirstOrder;
            v.notes = f.notes;
            v.notes.push_back("implied by the first-order cone condition");
            return v;
        }
    }
    if (affine_map(inst)) {
        v.status = Status::HOLDS;
        v.route = kRouteAffinePoly;
        v.notes.push_back("affine map into a finite union of polyhedra");
        return v;
    }
    if (!have_an) return v; // UNKNOWN: nothing more can be said without strata

    Verdict so = soscms_from(inst, an, cfg);
    if (so.status == Status::HOLDS) {
        v.status = Status::HOLDS;
        v.route = kRouteSecondOrder;
        v.notes = so.notes;
        v.notes.push_back("implied by the second-order cone condition");
        return v;
    }

    // try to certify failure along each surviving multiplier direction
    std::size_t attempts = 0;
    for (const DirStratum& st : an.strata) {
        std::vector<QVec> dirs{st.rep};
        if (cone_dim(st.gens) >= 2) dirs.push_back(relint_point(st.gens, 1));
        for (std::size_t vi = 0; vi < st.violation.size(); ++vi) {
            for (const QVec& zeta : multiplier_candidates(st.violation[vi])) {
                for (const QVec& u : dirs) {
                    if (++attempts > 64) break;
                    auto seq = sequence_falsifier(inst, u, zeta, pseudo, cfg.falsifier);
                    if (!seq) continue;
                    v.status = Status::FAILS;
                    v.route = kRouteSequence;
                    Witness w;
                    w.u = u;
                    w.zeta = zeta;
                    w.stratum = st.tag + " / " + st.violation_tags[vi];
                    w.prefix = std::move(*seq);
                    w.t0 = cfg.falsifier.t0;
                    w.shrink = cfg.falsifier.shrink;
                    v.witness = std::move(w);
                    v.notes.push_back(pseudo ? "exact sequence violates the aggregate sign condition"
                                             : "exact sequence violates the componentwise sign condition");
                    return v;
                }
            }
        }
    }
    v.notes.push_back("first- and second-order routes inconclusive; no failure certificate found");
    return v;
}

} // namespace

Verdict check_dir_pseudo(const ProblemInstance& inst, const CheckConfig& cfg) {
    return directional_cascade(inst, cfg, true, nullptr);
}

Verdict check_dir_quasi(const ProblemInstance& inst, const CheckConfig& cfg) {
    return directional_cascade(inst, cfg, false, nullptr);
}

// --- native complementarity-system route ---------------------------------------

Verdict check_cs_directional(const CSInstance& cs, bool pseudo, const CheckConfig& cfg) {
    Verdict v;
    for (const std::vector<FunctionAtom>* stack : {&cs.H, &cs.Phi, &cs.Psi})
        for (const FunctionAtom& a : *stack)
            if (std::holds_alternative<OracleAtom>(a)) {
                v.notes.push_back("system contains numeric-only atoms; exact analysis unavailable");
                return v;
            }
    ProblemInstance g = cs_to_general(cs);
    IndexSets is = index_sets(cs);
    if (is.i00.size() > cfg.i00_cap) {
        v.notes.push_back("biactive pair budget exceeded");
        return v;
    }
    const std::size_t n = cs_dim(cs);
    const std::size_t d = cs_d(cs);
    const std::size_t m = cs_m(cs);
    const std::size_t M = d + 2 * m; // multiplier dimension in system coordinates
    QMat J = jacobian(g, g.anchor);
    auto row_phi = [&](std::size_t i) { return J[d + 2 * i]; };
    auto row_psi = [&](std::size_t i) { return J[d + 2 * i + 1]; };

    try {
        // closed direction patterns over the biactive pairs
        HCone base;
        base.dim = n;
        for (std::size_t r = 0; r < d; ++r) base.eq.push_back(J[r]);
        for (std::size_t i : is.i0p) base.eq.push_back(row_phi(i));
        for (std::size_t i : is.ip0) base.eq.push_back(row_psi(i));

        std::size_t npat = 1;
        for (std::size_t i = 0; i < is.i00.size(); ++i) npat *= 3;
        std::vector<HCone> patterns;
        for (std::size_t code = 0; code < npat; ++code) {
            HCone W = base;
            std::size_t c = code;
            for (std::size_t i : is.i00) {
                switch (c % 3) {
                case 0: // first component pinned, second nonnegative
                    W.eq.push_back(row_phi(i));
                    W.ineq.push_back(neg(row_psi(i)));
                    break;
                case 1:
                    W.eq.push_back(row_psi(i));
                    W.ineq.push_back(neg(row_phi(i)));
                    break;
                default:
                    W.eq.push_back(row_phi(i));
                    W.eq.push_back(row_psi(i));
                }
                c /= 3;
            }
            patterns.push_back(canonical(W));
        }

        bool nontrivial = false;
        for (const HCone& W : patterns)
            if (!is_trivial(W)) nontrivial = true;

        DirectionAnalysis an;
        if (!nontrivial) {
            an.trivial = true;
        } else {
            HCone K = kernel_cone(J, n, M);
            for (const VCone& st : arrangement_strata(patterns, cfg.face_cap)) {
                DirStratum ds;
                ds.gens = st;
                ds.rep = relint_point(st);
                // actual partition of the biactive pairs at the representative
                std::vector<std::size_t> free_phi = is.ip0; // gamma_i = 0 there
                std::vector<std::size_t> free_psi = is.i0p; // nu_i = 0 there
                std::vector<std::size_t> branch;            // still biactive to first order
                std::string ptag = "pattern:";
                for (std::size_t i : is.i00) {
                    int a = sgn(dot(row_phi(i), ds.rep));
                    int b = sgn(dot(row_psi(i), ds.rep));
                    if (a < 0 || b < 0 || (a > 0 && b > 0))
                        throw InconsistencyError("stratum escapes every direction pattern");
                    if (a == 0 && b == 0) {
                        branch.push_back(i);
                        ptag += "00,";
                    } else if (a == 0) {
                        free_psi.push_back(i);
                        ptag += "0+,";
                    } else {
                        free_phi.push_back(i);
                        ptag += "+0,";
                    }
                }
                ds.tag = ptag;

                // multiplier cones in system coordinates, one per branch choice
                std::size_t nb = 1;
                for (std::size_t i = 0; i < branch.size(); ++i) nb *= 3;
                std::vector<ConePiece> zp;
                for (std::size_t bc = 0; bc < nb; ++bc) {
                    HCone Z = K; // stationarity: J^T zeta = 0
                    std::string btag = ds.tag;
                    for (std::size_t i : free_phi) Z.eq.push_back(unit(M, d + 2 * i));
                    for (std::size_t i : free_psi) Z.eq.push_back(unit(M, d + 2 * i + 1));
                    std::size_t c = bc;
                    for (std::size_t i : branch) {
                        switch (c % 3) {
                        case 0:
                            Z.eq.push_back(unit(M, d + 2 * i));
                            btag += "a";
                            break;
                        case 1:
                            Z.eq.push_back(unit(M, d + 2 * i + 1));
                            btag += "b";
                            break;
                        default: // both signed components nonpositive
                            Z.ineq.push_back(unit(M, d + 2 * i));
                            Z.ineq.push_back(unit(M, d + 2 * i + 1));
                            btag += "c";
                        }
                        c /= 3;
                    }
                    zp.push_back({Z, btag});
                }
                ConeUnion zu;
                zu.dim = M;
                zu.pieces = std::move(zp);
                zu = canonical(zu); // dedup + drop subsumed branch cones
                for (const ConePiece& p : zu.pieces) {
                    VCone V = canonical(dd_h_to_v(p.cone));
                    if (is_trivial(V)) continue;
                    ds.violation.push_back(std::move(V));
                    ds.violation_tags.push_back(p.tag);
                }
                an.strata.push_back(std::move(ds));
            }
        }
        Verdict out = directional_cascade(g, cfg, pseudo, &an);
        return out;
    } catch (const CapacityError& e) {
        v.notes.push_back(std::string("budget exceeded: ") + e.what());
        return v;
    }
}

// --- witness re-verification ----------------------------------------------------

bool reverify(const ProblemInstance& inst, CheckKind kind, const Witness& w,
              const CheckConfig& cfg) {
    try {
        if (!exact(inst)) return false;
        const std::size_t n = in_dim(inst);
        QMat J = jacobian(inst, inst.anchor);
        SetPoint sp = anchor_point(inst);
        (void)n;
        switch (kind) {
        case CheckKind::NNAMCQ: {
            if (is_zero(w.zeta) || w.zeta.size() != out_dim(inst)) return false;
            if (!is_zero(vec_mat(w.zeta, J))) return false;
            return member(limiting_normal_cone(inst.lambda, sp, cfg.face_cap), w.zeta);
        }
        case CheckKind::FOSCMS:
        case CheckKind::SOSCMS: {
            if (is_zero(w.u) || w.u.size() != in_dim(inst)) return false;
            if (is_zero(w.zeta) || w.zeta.size() != out_dim(inst)) return false;
            if (!is_zero(vec_mat(w.zeta, J))) return false;
            QVec dvec = mat_vec(J, w.u);
            ConeUnion D = directional_normal_cone(inst.lambda, sp, dvec, cfg.face_cap);
            if (!member(D, w.zeta)) return false;
            if (kind == CheckKind::SOSCMS)
                return sgn(dot(w.zeta, second_derivative(inst, inst.anchor, w.u))) >= 0;
            return true;
        }
        default: {
            if (w.prefix.empty()) return false;
            FalsifierConfig fc{w.t0, w.shrink, w.prefix.size()};
            auto seq =
                sequence_falsifier(inst, w.u, w.zeta, kind == CheckKind::DirPseudo, fc);
            if (!seq || seq->size() != w.prefix.size()) return false;
            for (std::size_t k = 0; k < seq->size(); ++k) {
                const SeqEntry& a = (*seq)[k];
                const SeqEntry& b = w.prefix[k];
                if (cmp(a.t, b.t) != 0 || compare(a.x, b.x) != 0 || compare(a.s, b.s) != 0 ||
                    compare(a.zeta, b.zeta) != 0)
                    return false;
            }
            return true;
        }
        }
    } catch (const Error&) {
        return false;
    }
}

// --- full chain ------------------------------------------------------------------

ChainReport report_chain(const ProblemInstance& inst, const CheckConfig& cfg) {
    ChainReport r;
    r.nnamcq = check_nnamcq(inst, cfg);
    r.foscms = check_foscms(inst, cfg);
    r.soscms = check_soscms(inst, cfg);
    r.dir_pseudo = check_dir_pseudo(inst, cfg);
    r.dir_quasi = check_dir_quasi(inst, cfg);

    const Verdict* chain[] = {&r.nnamcq, &r.foscms, &r.soscms, &r.dir_pseudo, &r.dir_quasi};
    const char* names[] = {"nnamcq", "foscms", "soscms", "dir-pseudo", "dir-quasi"};
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = i + 1; j < 5; ++j)
            if (chain[i]->status == Status::HOLDS && chain[j]->status == Status::FAILS)
                throw InconsistencyError(std::string("verdicts violate the implication ") +
                                         names[i] + " => " + names[j]);

    for (const Verdict* c : chain)
        if (c->status == Status::HOLDS) r.subregular = true;
    if (exact(inst)) {
        try {
            r.strong = analyze_directions(inst, cfg).trivial;
        } catch (const Error&) {
            r.strong = false;
        }
    }

    if (r.subregular) {
        const char* weakest = nullptr;
        for (int i = 4; i >= 0; --i)
            if (chain[i]->status == Status::HOLDS) {
                weakest = names[i];
                break;
            }
        r.conclusion = std::string("metric subregularity holds at the anchor (verified: ") +
                       (weakest ? weakest : "") + ")";
        if (r.strong)
            r.conclusion += "; the linearized cone is trivial, so the stronger isolated form holds";
    } else if (r.dir_quasi.status == Status::FAILS) {
        r.conclusion = "directional quasi-normality fails along a certified direction; "
                       "no sufficient condition in the chain applies";
    } else {
        bool any_fail = false;
        for (const Verdict* c : chain)
            if (c->status == Status::FAILS) any_fail = true;
        r.conclusion = any_fail ? "the verified conditions fail and the remaining ones are "
                                  "inconclusive; no certificate either way"
                                : "inconclusive: no sufficient condition could be verified and "
                                  "no failure certificate was found";
    }
    return r;
}

} // namespace conecq
