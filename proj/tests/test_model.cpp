#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "conecq/model.hpp"

#include "conecq/errors.hpp"

#include <cmath>

using namespace conecq;

namespace {

// P(x) = (x, -x^2) into {(x, y) : y <= 0 or y <= x}, anchored at 0
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

} // namespace

TEST_CASE("dimensions and exactness flags") {
    ProblemInstance inst = wedge_instance();
    CHECK(in_dim(inst) == 1);
    CHECK(out_dim(inst) == 2);
    CHECK(exact(inst));
    CHECK(!affine_map(inst)); // curvature in the second row
    validate(inst);

    ProblemInstance aff;
    aff.atoms.push_back(AffineAtom{{{rat(1), rat(0)}, {rat(0), rat(1)}}, {rat(0), rat(0)}});
    aff.lambda.factors.push_back(OrthantFactor{2, +1});
    aff.anchor = {rat(0), rat(0)};
    CHECK(affine_map(aff));
    validate(aff);

    // a quadratic atom with zero curvature still counts as affine
    ProblemInstance zq = aff;
    zq.atoms[0] = QuadAtom{{QMat{{rat(0), rat(0)}, {rat(0), rat(0)}},
                            QMat{{rat(0), rat(0)}, {rat(0), rat(0)}}},
                           {{rat(1), rat(0)}, {rat(0), rat(1)}},
                           {rat(0), rat(0)}};
    CHECK(affine_map(zq));

    ProblemInstance orc = aff;
    OracleAtom oa;
    oa.in_dim = 2;
    oa.out_dim = 2;
    oa.eval = [](const std::vector<double>& x) { return x; };
    orc.atoms[0] = oa;
    CHECK(!exact(orc));
    CHECK(!affine_map(orc));
}

TEST_CASE("validation rejects malformed instances") {
    ProblemInstance bad = wedge_instance();
    std::get<QuadAtom>(bad.atoms[0]).c.pop_back();
    CHECK_THROWS_AS(validate(bad), DimensionError);

    ProblemInstance asym;
    asym.atoms.push_back(QuadAtom{{QMat{{rat(0), rat(1)}, {rat(2), rat(0)}}},
                                  {{rat(0), rat(0)}},
                                  {rat(0)}});
    asym.lambda.factors.push_back(ZeroFactor{1});
    asym.anchor = {rat(0), rat(0)};
    CHECK_THROWS_AS(validate(asym), DimensionError);

    ProblemInstance infeas;
    infeas.atoms.push_back(AffineAtom{{{rat(1)}}, {rat(1)}});
    infeas.lambda.factors.push_back(ZeroFactor{1});
    infeas.anchor = {rat(0)}; // P(0) = 1, not in {0}
    CHECK_THROWS_AS(validate(infeas), InfeasibleError);
}

TEST_CASE("exact evaluation, jacobian, curvature") {
    ProblemInstance inst = wedge_instance();
    CHECK(eval_exact(inst, {rat(3)}) == QVec{rat(3), rat(-9)});
    CHECK(eval_exact(inst, {rat(-1, 2)}) == QVec{rat(-1, 2), rat(-1, 4)});
    CHECK(jacobian(inst, {rat(0)}) == QMat{{rat(1)}, {rat(0)}});
    CHECK(jacobian(inst, {rat(2)}) == QMat{{rat(1)}, {rat(-4)}});
    CHECK(second_derivative(inst, {rat(0)}, {rat(-1)}) == QVec{rat(0), rat(-2)});
    CHECK(second_derivative(inst, {rat(5)}, {rat(3)}) == QVec{rat(0), rat(-18)});

    // doubled affine/quad mixed stack evaluates rowwise
    ProblemInstance mix;
    mix.atoms.push_back(AffineAtom{{{rat(2), rat(0)}}, {rat(-1)}});
    mix.atoms.push_back(QuadAtom{{QMat{{rat(2), rat(0)}, {rat(0), rat(0)}}},
                                 {{rat(0), rat(1)}},
                                 {rat(0)}});
    mix.lambda.factors.push_back(OrthantFactor{2, +1});
    mix.anchor = {rat(1), rat(0)};
    validate(mix);
    CHECK(eval_exact(mix, {rat(1), rat(2)}) == QVec{rat(1), rat(3)});
    CHECK(jacobian(mix, {rat(1), rat(2)}) == QMat{{rat(2), rat(0)}, {rat(2), rat(1)}});
}

TEST_CASE("approximate evaluation agrees with exact") {
    ProblemInstance inst = wedge_instance();
    for (double x : {0.0, 0.5, -1.25, 2.0}) {
        auto y = eval_approx(inst, {x});
        CHECK(y[0] == doctest::Approx(x));
        CHECK(y[1] == doctest::Approx(-x * x));
        auto J = jacobian_approx(inst, {x});
        CHECK(J[0][0] == doctest::Approx(1.0).epsilon(1e-5));
        CHECK(J[1][0] == doctest::Approx(-2 * x).epsilon(1e-5));
    }

    // oracle atoms run through callbacks and finite differences
    ProblemInstance orc;
    OracleAtom oa;
    oa.in_dim = 1;
    oa.out_dim = 1;
    oa.eval = [](const std::vector<double>& x) { return std::vector<double>{std::sin(x[0])}; };
    orc.atoms.push_back(oa);
    orc.lambda.factors.push_back(OrthantFactor{1, +1});
    orc.anchor = {rat(0)};
    CHECK(eval_approx(orc, {0.3})[0] == doctest::Approx(std::sin(0.3)));
    CHECK(jacobian_approx(orc, {0.3})[0][0] == doctest::Approx(std::cos(0.3)).epsilon(1e-4));
    CHECK_THROWS_AS(eval_exact(orc, {rat(0)}), CapabilityError);
    CHECK_THROWS_AS(jacobian(orc, {rat(0)}), CapabilityError);
}

TEST_CASE("anchor point and linearized cone") {
    ProblemInstance inst = wedge_instance();
    SetPoint p = anchor_point(inst);
    CHECK(p.y == QVec{rat(0), rat(0)});
    ConeUnion L = linearized_cone(inst);
    // both halfplane pieces pull back, one to all of R, one to u >= 0
    CHECK(member(L, QVec{rat(1)}));
    CHECK(member(L, QVec{rat(-1)}));
    ConeUnion cl = canonical(L);
    REQUIRE(cl.pieces.size() == 1); // the ray is subsumed by the full line
    CHECK(same_cone(cl.pieces[0].cone, full_cone(1)));

    // an instance whose linearized cone is a proper ray
    ProblemInstance ray;
    ray.atoms.push_back(AffineAtom{{{rat(1)}}, {rat(0)}});
    ray.lambda.factors.push_back(OrthantFactor{1, +1});
    ray.anchor = {rat(0)};
    ConeUnion L2 = linearized_cone(ray);
    CHECK(member(L2, QVec{rat(2)}));
    CHECK(!member(L2, QVec{rat(-2)}));
}

TEST_CASE("complementarity system embedding, one biactive pair") {
    // H(x) = x1 + x2, Phi = x1, Psi = x2, anchored at the origin
    CSInstance cs;
    cs.name = "pair";
    cs.H.push_back(AffineAtom{{{rat(1), rat(1)}}, {rat(0)}});
    cs.Phi.push_back(AffineAtom{{{rat(1), rat(0)}}, {rat(0)}});
    cs.Psi.push_back(AffineAtom{{{rat(0), rat(1)}}, {rat(0)}});
    cs.anchor = {rat(0), rat(0)};
    validate(cs);
    CHECK(cs_dim(cs) == 2);
    CHECK(cs_m(cs) == 1);
    CHECK(cs_d(cs) == 1);
    IndexSets is = index_sets(cs);
    CHECK(is.i00 == std::vector<std::size_t>{0});
    CHECK(is.i0p.empty());
    CHECK(is.ip0.empty());

    ProblemInstance g = cs_to_general(cs);
    CHECK(in_dim(g) == 2);
    CHECK(out_dim(g) == 3); // H row, then the interleaved pair
    CHECK(eval_exact(g, {rat(2), rat(-1)}) == QVec{rat(1), rat(2), rat(-1)});
    REQUIRE(g.lambda.factors.size() == 2);
    CHECK(std::holds_alternative<ZeroFactor>(g.lambda.factors[0]));
    CHECK(std::holds_alternative<ComplFactor>(g.lambda.factors[1]));
    validate(g);
}

TEST_CASE("index sets classify strictly active pairs") {
    CSInstance cs;
    cs.Phi.push_back(AffineAtom{{{rat(1), rat(0)}}, {rat(0)}});  // 0 at anchor
    cs.Phi.push_back(AffineAtom{{{rat(0), rat(0)}}, {rat(1)}});  // 1 at anchor
    cs.Psi.push_back(AffineAtom{{{rat(0), rat(0)}}, {rat(2)}});  // 2 at anchor
    cs.Psi.push_back(AffineAtom{{{rat(0), rat(1)}}, {rat(0)}});  // 0 at anchor
    cs.anchor = {rat(0), rat(0)};
    validate(cs);
    IndexSets is = index_sets(cs);
    CHECK(is.i00.empty());
    CHECK(is.i0p == std::vector<std::size_t>{0});
    CHECK(is.ip0 == std::vector<std::size_t>{1});

    // violated complementarity at the anchor is rejected
    CSInstance bad = cs;
    bad.anchor = {rat(1), rat(1)}; // Phi_1 = Psi_2 = 1 on both sides
    CHECK_THROWS_AS(index_sets(bad), InfeasibleError);
    CHECK_THROWS_AS(validate(bad), InfeasibleError);
}

TEST_CASE("stationarity system embedding") {
    // min -x subject to (1/2) x^2 - 1/2 <= 0, solved at x = 1 with mu = 1
    KKTInstance k;
    k.name = "circle";
    k.f = AffineAtom{{{rat(-1)}}, {rat(0)}};
    k.g.push_back(QuadAtom{{QMat{{rat(1)}}}, {{rat(0)}}, {rat(-1, 2)}});
    k.x = {rat(1)};
    k.mu = {rat(1)};
    validate(k);

    CSInstance cs = kkt_to_cs(k);
    CHECK(cs_dim(cs) == 2); // z = (x, mu)
    CHECK(cs_d(cs) == 1);   // one stationarity row, no equalities
    CHECK(cs_m(cs) == 1);
    CHECK(cs.anchor == QVec{rat(1), rat(1)});
    validate(cs);

    ProblemInstance g = cs_to_general(cs);
    // rows: (mu x - 1, 1/2 - x^2/2, mu)
    CHECK(eval_exact(g, {rat(1), rat(1)}) == QVec{rat(0), rat(0), rat(1)});
    CHECK(eval_exact(g, {rat(2), rat(3)}) == QVec{rat(5), rat(-3, 2), rat(3)});
    // stationarity row has the bilinear cross term: d/dz (mu x) = (mu, x)
    QMat J = jacobian(g, {rat(1), rat(1)});
    CHECK(J[0] == QVec{rat(1), rat(1)});
    CHECK(J[1] == QVec{rat(-1), rat(0)});
    CHECK(J[2] == QVec{rat(0), rat(1)});
    IndexSets is = index_sets(cs);
    CHECK(is.i0p == std::vector<std::size_t>{0}); // g active, multiplier positive

    // equality constraints flow into extra stationarity variables
    KKTInstance k2;
    k2.f = QuadAtom{{identity(2)}, {{rat(0), rat(0)}}, {rat(0)}};
    k2.h.push_back(AffineAtom{{{rat(1), rat(1)}}, {rat(-2)}});
    k2.x = {rat(1), rat(1)};
    k2.lam = {rat(-1)};
    validate(k2);
    CSInstance cs2 = kkt_to_cs(k2);
    CHECK(cs_dim(cs2) == 3); // (x1, x2, lambda)
    CHECK(cs_d(cs2) == 3);   // two stationarity rows + one equality
    CHECK(cs_m(cs2) == 0);
    validate(cs2);
    ProblemInstance g2 = cs_to_general(cs2);
    // rows at (x, lambda): (x1 + lambda, x2 + lambda, x1 + x2 - 2)
    CHECK(eval_exact(g2, {rat(1), rat(1), rat(-1)}) == QVec{rat(0), rat(0), rat(0)});
    CHECK(eval_exact(g2, {rat(2), rat(0), rat(1)}) == QVec{rat(3), rat(1), rat(0)});
}

TEST_CASE("kkt validation rejects inconsistent multipliers") {
    KKTInstance k;
    k.f = AffineAtom{{{rat(-1)}}, {rat(0)}};
    k.g.push_back(QuadAtom{{QMat{{rat(1)}}}, {{rat(0)}}, {rat(-1, 2)}});
    k.x = {rat(1)};
    k.mu = {rat(-1)}; // negative multiplier: Psi = mu < 0 at the anchor
    CHECK_THROWS_AS(validate(k), InfeasibleError);

    KKTInstance wrong = k;
    wrong.mu = {rat(1), rat(1)}; // arity mismatch with g
    CHECK_THROWS_AS(validate(wrong), DimensionError);
}
