// Acceptance suite: end-to-end checks of the exact cone machinery, the
// verdict chain, the witness re-verification contract, and the floating
// point corroboration layer.  Prints one line per criterion:
//
//   criterion N: <label> PASS|FAIL
//
// and exits nonzero if any criterion fails.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "conecq/checkers.hpp"
#include "conecq/errors.hpp"
#include "conecq/numeric.hpp"

using namespace conecq;

namespace {

int g_failures = 0;

// witness bookkeeping shared across criteria (criterion 8 aggregates it)
std::size_t g_witnesses_seen = 0;
std::size_t g_witnesses_ok = 0;
std::size_t g_escaped = 0;

void diag(const std::string& msg) { std::cerr << "  [acceptance] " << msg << "\n"; }

// Every FAILS verdict must carry a witness that reverify() accepts.
bool note_witness(const ProblemInstance& inst, CheckKind kind, const Verdict& v) {
    if (v.status != Status::FAILS) return true;
    ++g_witnesses_seen;
    if (!v.witness) {
        diag(std::string(kind_str(kind)) + ": FAILS verdict without witness");
        return false;
    }
    bool ok = false;
    try {
        ok = reverify(inst, kind, *v.witness, {});
    } catch (const std::exception& e) {
        diag(std::string("reverify threw: ") + e.what());
        ok = false;
    }
    if (ok) ++g_witnesses_ok;
    else diag(std::string(kind_str(kind)) + ": witness rejected on re-verification");
    return ok;
}

template <typename F>
void run_criterion(int idx, const std::string& label, F body) {
    bool ok = false;
    try {
        ok = body();
    } catch (const std::exception& e) {
        diag("criterion " + std::to_string(idx) + " threw: " + e.what());
        ++g_escaped;
        ok = false;
    }
    std::cout << "criterion " << idx << ": " << label << " " << (ok ? "PASS" : "FAIL")
              << std::endl;
    if (!ok) ++g_failures;
}

// --- shared instance builders --------------------------------------------------

// P(x) = (x, -x^2) into {(a, b) : b <= 0 or b <= a}, anchored at 0
ProblemInstance wedge_instance() {
    ProblemInstance inst;
    inst.name = "wedge";
    QuadAtom q;
    q.Q = {QMat{{rat(0)}}, QMat{{rat(-2)}}};
    q.A = {{rat(1)}, {rat(0)}};
    q.c = {rat(0), rat(0)};
    inst.atoms.push_back(q);
    UnionFactor u;
    u.dim = 2;
    u.pieces.push_back(Polyhedron{{{rat(0), rat(1)}}, {rat(0)}});
    u.pieces.push_back(Polyhedron{{{rat(-1), rat(1)}}, {rat(0)}});
    inst.lambda.factors.push_back(u);
    inst.anchor = {rat(0)};
    return inst;
}

// P(x) = (x, 0) into the same wedge: affine, the first-order condition fails
ProblemInstance affine_wedge() {
    ProblemInstance inst = wedge_instance();
    inst.atoms[0] = AffineAtom{{{rat(1)}, {rat(0)}}, {rat(0), rat(0)}};
    return inst;
}

// P(x) = x^2 into {0}: certified failure of every condition in the chain
ProblemInstance square_control() {
    ProblemInstance inst;
    inst.name = "square-control";
    inst.atoms.push_back(QuadAtom{{QMat{{rat(2)}}}, {{rat(0)}}, {rat(0)}});
    inst.lambda.factors.push_back(ZeroFactor{1});
    inst.anchor = {rat(0)};
    return inst;
}

KKTInstance circle_kkt() {
    KKTInstance k;
    k.name = "circle";
    k.f = AffineAtom{{{rat(-1)}}, {rat(0)}};
    k.g.push_back(QuadAtom{{QMat{{rat(1)}}}, {{rat(0)}}, {rat(-1, 2)}});
    k.x = {rat(1)};
    k.mu = {rat(1)};
    return k;
}

ConeUnion one_piece(HCone c) {
    ConeUnion u;
    u.dim = c.dim;
    u.pieces.push_back(ConePiece{std::move(c), ""});
    return u;
}

// --- deterministic random generators --------------------------------------------

struct Rng {
    std::mt19937_64 eng;
    explicit Rng(std::uint64_t seed) : eng(seed) {}
    long pick(long lo, long hi) {
        return lo + static_cast<long>(eng() % static_cast<std::uint64_t>(hi - lo + 1));
    }
};

QVec random_row(Rng& rng, std::size_t k, long lo = -2, long hi = 2) {
    QVec r(k, rat(0));
    do {
        for (Rat& e : r) e = rat(rng.pick(lo, hi));
    } while (is_zero(r));
    return r;
}

// One random factor plus a known member of it (appended to `base`).
Factor random_factor(Rng& rng, QVec& base, bool width_one_only) {
    long kind = rng.pick(0, width_one_only ? 1 : 3);
    switch (kind) {
        case 0:
            base.push_back(rat(0));
            return ZeroFactor{1};
        case 1: {
            int sign = rng.pick(0, 1) ? +1 : -1;
            base.push_back(rat(sign * rng.pick(0, 1)));
            return OrthantFactor{1, sign};
        }
        case 2: {
            UnionFactor u;
            u.dim = 2;
            QVec y0{rat(rng.pick(-1, 1)), rat(rng.pick(-1, 1))};
            std::size_t npieces = 1 + static_cast<std::size_t>(rng.pick(0, 1));
            for (std::size_t p = 0; p < npieces; ++p) {
                Polyhedron poly;
                std::size_t nrows = 1 + static_cast<std::size_t>(rng.pick(0, 1));
                for (std::size_t r = 0; r < nrows; ++r) {
                    QVec row = random_row(rng, 2);
                    // piece 0 contains y0 (usually with an active row); the
                    // rest get integer offsets either way
                    Rat slack = p == 0 ? rat(rng.pick(0, 2) == 2 ? 1 : 0) : rat(rng.pick(-1, 1));
                    poly.rhs.push_back(dot(row, y0) + slack);
                    poly.rows.push_back(std::move(row));
                }
                u.pieces.push_back(std::move(poly));
            }
            base.insert(base.end(), y0.begin(), y0.end());
            return u;
        }
        default: {
            long which = rng.pick(0, 2);
            if (which == 0) {
                base.push_back(rat(0));
                base.push_back(rat(0));
            } else if (which == 1) {
                base.push_back(rat(1));
                base.push_back(rat(0));
            } else {
                base.push_back(rat(0));
                base.push_back(rat(2));
            }
            return ComplFactor{};
        }
    }
}

// Random instance with a feasible anchor by construction: the set (with a
// known member `base`) is drawn first and the map's constant term is chosen
// so that P(anchor) = base exactly.
ProblemInstance random_instance(Rng& rng, bool allow_curvature) {
    ProblemInstance inst;
    std::size_t n = 1 + static_cast<std::size_t>(rng.pick(0, 1));
    QVec base;
    std::size_t nfactors = 1 + static_cast<std::size_t>(rng.pick(0, 1));
    for (std::size_t f = 0; f < nfactors; ++f)
        inst.lambda.factors.push_back(random_factor(rng, base, base.size() >= 2));
    std::size_t out = base.size();

    QVec anchor(n, rat(0));
    for (Rat& e : anchor) e = rat(rng.pick(-1, 1));

    QMat A(out, QVec(n, rat(0)));
    for (QVec& row : A)
        for (Rat& e : row) e = rat(rng.pick(-2, 2));

    bool curved = allow_curvature && rng.pick(0, 9) < 4;
    if (!curved) {
        QVec c = sub(base, mat_vec(A, anchor));
        inst.atoms.push_back(AffineAtom{std::move(A), std::move(c)});
    } else {
        QuadAtom q;
        q.Q.assign(out, QMat(n, QVec(n, rat(0))));
        for (std::size_t r = 0; r < out; ++r) {
            if (rng.pick(0, 1) == 0) continue; // keep some rows affine
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i; j < n; ++j) {
                    Rat e = rat(rng.pick(-1, 1));
                    q.Q[r][i][j] = e;
                    q.Q[r][j][i] = e;
                }
        }
        q.A = std::move(A);
        q.c = QVec(out, rat(0));
        for (std::size_t r = 0; r < out; ++r) {
            Rat val = rat(1, 2) * dot(anchor, mat_vec(q.Q[r], anchor)) + dot(q.A[r], anchor);
            q.c[r] = base[r] - val;
        }
        inst.atoms.push_back(std::move(q));
    }
    inst.anchor = std::move(anchor);
    return inst;
}

// Random complementarity system with prescribed index classes at the anchor.
CSInstance random_cs(Rng& rng) {
    CSInstance cs;
    std::size_t n = 1 + static_cast<std::size_t>(rng.pick(0, 2));
    std::size_t d = static_cast<std::size_t>(rng.pick(0, 1));
    std::size_t m = 1 + static_cast<std::size_t>(rng.pick(0, 2));
    QVec xh(n, rat(0));
    for (Rat& e : xh) e = rat(rng.pick(-1, 1));
    cs.anchor = xh;

    auto row_atom = [&](const Rat& target) -> FunctionAtom {
        QVec a(n, rat(0));
        for (Rat& e : a) e = rat(rng.pick(-2, 2));
        if (rng.pick(0, 9) < 3) {
            QMat Q(n, QVec(n, rat(0)));
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i; j < n; ++j) {
                    Rat e = rat(rng.pick(-1, 1));
                    Q[i][j] = e;
                    Q[j][i] = e;
                }
            Rat val = rat(1, 2) * dot(xh, mat_vec(Q, xh)) + dot(a, xh);
            QuadAtom q;
            q.Q = {std::move(Q)};
            q.A = {std::move(a)};
            q.c = {target - val};
            return q;
        }
        Rat val = dot(a, xh);
        return AffineAtom{{std::move(a)}, {target - val}};
    };

    for (std::size_t r = 0; r < d; ++r) cs.H.push_back(row_atom(rat(0)));
    for (std::size_t i = 0; i < m; ++i) {
        long cls = rng.pick(0, 2); // 0: both active, 1: first active, 2: second active
        Rat phi = cls == 2 ? rat(rng.pick(1, 2)) : rat(0);
        Rat psi = cls == 1 ? rat(rng.pick(1, 2)) : rat(0);
        cs.Phi.push_back(row_atom(phi));
        cs.Psi.push_back(row_atom(psi));
    }
    return cs;
}

// --- criteria --------------------------------------------------------------------

bool criterion1() {
    ProblemInstance inst = wedge_instance();
    validate(inst);
    SetPoint p = anchor_point(inst);

    ConeUnion T = tangent_cone(inst.lambda, p);
    for (long a = -3; a <= 3; ++a)
        for (long b = -3; b <= 3; ++b) {
            QVec y{rat(a), rat(b)};
            if (member(T, y) != member(inst.lambda, y)) {
                diag("tangent cone disagrees with the set on the grid");
                return false;
            }
        }
    if (!is_trivial(regular_normal_cone(inst.lambda, p))) {
        diag("regular normal cone should be trivial at the kink");
        return false;
    }
    ConeUnion N = limiting_normal_cone(inst.lambda, p);
    ConeUnion expectN;
    expectN.dim = 2;
    expectN.pieces.push_back(ConePiece{dd_v_to_h(make_vcone(2, {{rat(0), rat(1)}})), ""});
    expectN.pieces.push_back(ConePiece{dd_v_to_h(make_vcone(2, {{rat(-1), rat(1)}})), ""});
    if (!same_union(N, expectN)) {
        diag("limiting normal cone of the wedge is not the expected two rays");
        return false;
    }

    Verdict nn = check_nnamcq(inst);
    if (nn.status != Status::FAILS || nn.route != kRoutePointCone) {
        diag("point condition should fail via the point-cone route");
        return false;
    }
    if (!note_witness(inst, CheckKind::NNAMCQ, nn)) return false;

    Verdict fo = check_foscms(inst);
    if (fo.status != Status::FAILS || fo.route != kRouteFirstOrder || !fo.witness) {
        diag("first-order condition should fail with a witness");
        return false;
    }
    if (!(fo.witness->u == QVec{rat(-1)} && fo.witness->zeta == QVec{rat(0), rat(1)})) {
        diag("first-order witness is not the expected (u, zeta)");
        return false;
    }
    if (!note_witness(inst, CheckKind::FOSCMS, fo)) return false;

    Verdict so = check_soscms(inst);
    if (so.status != Status::HOLDS || so.route != kRouteSecondOrder) {
        diag("second-order condition should hold via the curvature route");
        return false;
    }
    if (check_dir_pseudo(inst).status != Status::HOLDS) return false;
    if (check_dir_quasi(inst).status != Status::HOLDS) return false;
    return true;
}

bool criterion2() {
    StructuredSet s;
    s.factors.push_back(ComplFactor{});
    HCone axis_b = make_hcone(2, {}, {{rat(1), rat(0)}}); // {0} x R
    HCone axis_a = make_hcone(2, {}, {{rat(0), rat(1)}}); // R x {0}
    HCone neg_quadrant = make_hcone(2, {{rat(1), rat(0)}, {rat(0), rat(1)}});
    std::size_t cells = 0;

    { // cells 1-3: a point on the open second branch
        SetPoint p = locate(s, QVec{rat(0), rat(5)});
        if (same_union(tangent_cone(s, p), one_piece(axis_b))) ++cells;
        if (same_cone(regular_normal_cone(s, p), axis_a)) ++cells;
        if (same_union(limiting_normal_cone(s, p), one_piece(axis_a))) ++cells;
    }
    { // cells 4-6: a point on the open first branch
        SetPoint p = locate(s, QVec{rat(3), rat(0)});
        if (same_union(tangent_cone(s, p), one_piece(axis_a))) ++cells;
        if (same_cone(regular_normal_cone(s, p), axis_b)) ++cells;
        if (same_union(limiting_normal_cone(s, p), one_piece(axis_b))) ++cells;
    }
    SetPoint origin = locate(s, QVec{rat(0), rat(0)});
    { // cell 7: tangent cone at the kink is the set itself
        ConeUnion T = tangent_cone(s, origin);
        ConeUnion expectT;
        expectT.dim = 2;
        expectT.pieces.push_back(
            ConePiece{make_hcone(2, {{rat(-1), rat(0)}}, {{rat(0), rat(1)}}), ""});
        expectT.pieces.push_back(
            ConePiece{make_hcone(2, {{rat(0), rat(-1)}}, {{rat(1), rat(0)}}), ""});
        bool grid_ok = true;
        for (long a = -3; a <= 3 && grid_ok; ++a)
            for (long b = -3; b <= 3 && grid_ok; ++b) {
                QVec y{rat(a), rat(b)};
                grid_ok = member(T, y) == member(s, y);
            }
        if (grid_ok && same_union(T, expectT)) ++cells;
    }
    { // cell 8: regular normal cone at the kink
        if (same_cone(regular_normal_cone(s, origin), neg_quadrant)) ++cells;
    }
    ConeUnion N = limiting_normal_cone(s, origin);
    { // cell 9: limiting normal cone at the kink has all three pieces
        ConeUnion expectN;
        expectN.dim = 2;
        expectN.pieces.push_back(ConePiece{axis_b, ""});
        expectN.pieces.push_back(ConePiece{axis_a, ""});
        expectN.pieces.push_back(ConePiece{neg_quadrant, ""});
        if (same_union(N, expectN)) ++cells;
    }
    { // cell 10: direction into the first branch keeps only its normals
        ConeUnion D = directional_normal_cone(s, origin, QVec{rat(1), rat(0)});
        if (same_union(D, one_piece(axis_b))) ++cells;
    }
    { // cell 11: direction into the second branch
        ConeUnion D = directional_normal_cone(s, origin, QVec{rat(0), rat(1)});
        if (same_union(D, one_piece(axis_a))) ++cells;
    }
    { // cell 12: zero direction reproduces the limiting cone; a non-tangent
      // direction yields the empty union
        bool ok = same_union(directional_normal_cone(s, origin, QVec{rat(0), rat(0)}), N) &&
                  is_void(directional_normal_cone(s, origin, QVec{rat(1), rat(1)}));
        if (ok) ++cells;
    }
    if (cells != 12) diag("complementarity cells verified: " + std::to_string(cells) + "/12");
    return cells == 12;
}

bool criterion3() {
    auto t_start = std::chrono::steady_clock::now();
    Rng rng(1001);
    std::size_t affine_route = 0;
    for (int it = 0; it <= 200; ++it) {
        ProblemInstance inst = it == 0 ? affine_wedge() : random_instance(rng, false);
        validate(inst);
        Verdict ps = check_dir_pseudo(inst);
        Verdict qs = check_dir_quasi(inst);
        for (const Verdict* v : {&ps, &qs}) {
            if (v->status != Status::HOLDS) {
                diag("affine instance " + std::to_string(it) + " not verified: " +
                     status_str(v->status));
                return false;
            }
            if (v->route != kRouteFirstOrder && v->route != kRouteAffinePoly) {
                diag("unexpected route on affine instance: " + v->route);
                return false;
            }
            if (v->route == kRouteAffinePoly) ++affine_route;
        }
        if (it % 10 == 0) {
            SamplingConfig sc;
            sc.radii = {1e-2, 1e-3};
            sc.samples_per_radius = 8;
            ModulusTable mt = empirical_modulus(inst, sc);
            if (!mt.bounded) {
                diag("modulus table unbounded on verified affine instance " + std::to_string(it));
                return false;
            }
        }
    }
    if (affine_route == 0) {
        diag("the affine-polyhedral route never fired");
        return false;
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    if (secs >= 60.0) {
        diag("affine batch took " + std::to_string(secs) + "s (budget 60s)");
        return false;
    }
    return true;
}

bool criterion4() {
    Rng rng(2002);
    for (int it = 0; it < 500; ++it) {
        ProblemInstance inst = random_instance(rng, true);
        inst.name = "rand-" + std::to_string(it);
        validate(inst);
        ChainReport rep = report_chain(inst); // throws on inconsistent verdicts
        const std::pair<CheckKind, const Verdict*> items[] = {
            {CheckKind::NNAMCQ, &rep.nnamcq},
            {CheckKind::FOSCMS, &rep.foscms},
            {CheckKind::SOSCMS, &rep.soscms},
            {CheckKind::DirPseudo, &rep.dir_pseudo},
            {CheckKind::DirQuasi, &rep.dir_quasi},
        };
        bool any_holds = false;
        for (const auto& [kind, v] : items) {
            if (v->status == Status::HOLDS) any_holds = true;
            if (!note_witness(inst, kind, *v)) {
                diag("witness rejected on instance " + inst.name);
                return false;
            }
        }
        if (rep.subregular != any_holds || rep.conclusion.empty()) {
            diag("chain summary inconsistent on instance " + inst.name);
            return false;
        }
    }
    return true;
}

bool criterion5() {
    Rng rng(777);
    for (int it = 0; it < 100; ++it) {
        UnionFactor u;
        u.dim = 2;
        std::size_t npieces = 1 + static_cast<std::size_t>(rng.pick(0, 1));
        for (std::size_t p = 0; p < npieces; ++p) {
            Polyhedron poly;
            std::size_t nrows = 1 + static_cast<std::size_t>(rng.pick(0, 1));
            for (std::size_t r = 0; r < nrows; ++r) {
                poly.rows.push_back(random_row(rng, 2));
                poly.rhs.push_back(rat(rng.pick(0, 1)));
            }
            u.pieces.push_back(std::move(poly));
        }
        StructuredSet s;
        s.factors.push_back(u);
        SetPoint p0 = locate(s, QVec{rat(0), rat(0)});
        ConeUnion N = limiting_normal_cone(s, p0);

        // sampling oracle: regular normal cones at all feasible grid points
        // y = (i, j)/64, |i|, |j| <= 8.  Within that box the offset rows
        // (rhs 1) are never active, so each value is attained along the whole
        // segment (0, y] and therefore belongs to the limiting cone; and every
        // activity pattern near the origin is realized by a grid point.
        std::vector<HCone> vals;
        std::vector<std::string> keys;
        for (long i = -8; i <= 8; ++i)
            for (long j = -8; j <= 8; ++j) {
                QVec y{rat(i, 64), rat(j, 64)};
                HCone acc = full_cone(2);
                bool in_any = false;
                for (const Polyhedron& piece : u.pieces) {
                    bool in = true;
                    QMat act;
                    for (std::size_t r = 0; r < piece.rows.size(); ++r) {
                        Rat v = dot(piece.rows[r], y);
                        if (v > piece.rhs[r]) {
                            in = false;
                            break;
                        }
                        if (v == piece.rhs[r]) act.push_back(piece.rows[r]);
                    }
                    if (!in) continue;
                    in_any = true;
                    acc = intersect(acc, dd_v_to_h(make_vcone(2, act)));
                }
                if (!in_any) continue;
                std::string key = cone_key(acc);
                bool fresh = true;
                for (const std::string& k : keys)
                    if (k == key) {
                        fresh = false;
                        break;
                    }
                if (fresh) {
                    keys.push_back(std::move(key));
                    vals.push_back(std::move(acc));
                }
            }

        for (long zi = -4; zi <= 4; ++zi)
            for (long zj = -4; zj <= 4; ++zj) {
                QVec z{rat(zi), rat(zj)};
                bool exact_in = member(N, z);
                bool oracle_in = false;
                for (const HCone& h : vals)
                    if (contains(h, z)) {
                        oracle_in = true;
                        break;
                    }
                if (exact_in != oracle_in) {
                    diag("limiting normal mismatch at iteration " + std::to_string(it) + ", zeta=(" +
                         std::to_string(zi) + "," + std::to_string(zj) + "), exact=" +
                         (exact_in ? "in" : "out"));
                    return false;
                }
            }
    }
    return true;
}

bool criterion6() {
    ProblemInstance inst = square_control();
    const std::pair<CheckKind, Verdict> items[] = {
        {CheckKind::NNAMCQ, check_nnamcq(inst)},
        {CheckKind::FOSCMS, check_foscms(inst)},
        {CheckKind::SOSCMS, check_soscms(inst)},
        {CheckKind::DirPseudo, check_dir_pseudo(inst)},
        {CheckKind::DirQuasi, check_dir_quasi(inst)},
    };
    for (const auto& [kind, v] : items) {
        if (v.status != Status::FAILS) {
            diag(std::string(kind_str(kind)) + " should fail on the control instance");
            return false;
        }
        if (!note_witness(inst, kind, v)) return false;
    }

    SamplingConfig sc;
    sc.radii = {1e-2, 1e-3, 1e-4};
    sc.samples_per_radius = 16;
    sc.residual_floor = 1e-12;
    sc.projection_tol = 1e-14;
    ModulusTable mt = empirical_modulus(inst, sc);
    if (mt.rows.size() != 3) return false;
    for (const ModulusRow& row : mt.rows) {
        if (row.samples == 0 || row.all_feasible) {
            diag("control samples unexpectedly feasible at radius");
            return false;
        }
        double rel = row.worst_ratio * row.radius; // expected ratio is 1/radius
        if (rel < 0.9 || rel > 1.1) {
            diag("empirical ratio off the 1/r growth curve: " + std::to_string(rel));
            return false;
        }
    }
    if (mt.bounded) {
        diag("control modulus table should be flagged unbounded");
        return false;
    }
    return true;
}

bool criterion7() {
    Rng rng(4004);
    for (int it = 0; it < 100; ++it) {
        CSInstance cs = random_cs(rng);
        cs.name = "cs-" + std::to_string(it);
        validate(cs);
        ProblemInstance gen = cs_to_general(cs);
        for (bool pseudo : {true, false}) {
            Verdict native = check_cs_directional(cs, pseudo, {});
            Verdict embedded = pseudo ? check_dir_pseudo(gen) : check_dir_quasi(gen);
            if (native.status != embedded.status) {
                diag("native/embedded disagreement on " + cs.name + " (" +
                     (pseudo ? "aggregate" : "componentwise") + "): " + status_str(native.status) +
                     " vs " + status_str(embedded.status));
                return false;
            }
            CheckKind kind = pseudo ? CheckKind::DirPseudo : CheckKind::DirQuasi;
            if (!note_witness(gen, kind, native)) return false;
        }
    }

    KKTInstance k = circle_kkt();
    validate(k);
    SamplingConfig sc;
    sc.radii = {1e-2, 1e-3};
    sc.samples_per_radius = 16;
    sc.residual_floor = 1e-10;
    ModulusTable mt = empirical_modulus_kkt(k, sc);
    if (mt.rows.size() != 2) return false;
    for (const ModulusRow& row : mt.rows)
        if (row.samples == 0) {
            diag("stationarity sampling produced no usable residuals");
            return false;
        }
    if (!mt.bounded || mt.kappa_hat >= 50.0) {
        diag("stationarity modulus not bounded near the regular solution");
        return false;
    }
    return true;
}

bool criterion8() {
    if (g_witnesses_seen == 0) {
        diag("no failure witnesses were produced by the earlier criteria");
        return false;
    }
    if (g_witnesses_ok != g_witnesses_seen) {
        diag(std::to_string(g_witnesses_seen - g_witnesses_ok) + " of " +
             std::to_string(g_witnesses_seen) + " witnesses failed re-verification");
        return false;
    }
    if (g_escaped != 0) {
        diag("unexpected exceptions escaped earlier criteria");
        return false;
    }
    std::cerr << "  [acceptance] " << g_witnesses_ok << "/" << g_witnesses_seen
              << " failure witnesses re-verified\n";
    return true;
}

} // namespace

int main() {
    run_criterion(1, "quadratic map into a union: exact cones and full verdict chain", criterion1);
    run_criterion(2, "complementarity cells: tangent, regular, limiting, directional cones",
                  criterion2);
    run_criterion(3, "random affine systems verified with bounded empirical modulus", criterion3);
    run_criterion(4, "random smooth systems: consistent chain reports, witnesses re-verified",
                  criterion4);
    run_criterion(5, "union limiting normals agree with a sampling oracle", criterion5);
    run_criterion(6, "control instance: certified failure and 1/r modulus growth", criterion6);
    run_criterion(7, "complementarity route matches the embedded checker", criterion7);
    run_criterion(8, "every failure witness re-verified, no stray exceptions", criterion8);
    return g_failures == 0 ? 0 : 1;
}
