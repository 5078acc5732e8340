#pragma once

// Constraint mappings P and the three problem forms: the general system
// P(x) in Lambda, the complementarity system H(x) = 0, 0 <= Phi(x) _|_
// Psi(x) >= 0, and stationarity (KKT) systems, with the exact embeddings
// between them.

#include <functional>
#include <variant>

#include "conecq/sets.hpp"

namespace conecq {

// rows: A x + c
struct AffineAtom {
    QMat A;
    QVec c;
};
// row r: (1/2) x^T Q[r] x + A[r] x + c[r], Q[r] symmetric
struct QuadAtom {
    std::vector<QMat> Q;
    QMat A;
    QVec c;
};
// numeric-only mapping; jac may be empty (finite differences are used)
struct OracleAtom {
    std::size_t in_dim = 0;
    std::size_t out_dim = 0;
    std::function<std::vector<double>(const std::vector<double>&)> eval;
    std::function<std::vector<std::vector<double>>(const std::vector<double>&)> jac;
};

using FunctionAtom = std::variant<AffineAtom, QuadAtom, OracleAtom>;

std::size_t atom_in_dim(const FunctionAtom& a);
std::size_t atom_out_dim(const FunctionAtom& a);

struct ProblemInstance {
    std::string name;
    std::vector<FunctionAtom> atoms; // outputs stacked in order
    StructuredSet lambda;
    QVec anchor;
};

std::size_t in_dim(const ProblemInstance& inst);
std::size_t out_dim(const ProblemInstance& inst);
bool exact(const ProblemInstance& inst);      // no oracle atoms
bool affine_map(const ProblemInstance& inst); // exact with identically zero curvature

// Throws on shape mismatch or infeasible anchor (exact instances only;
// oracle anchors are checked in floating point by the caller).
void validate(const ProblemInstance& inst);

QVec eval_exact(const ProblemInstance& inst, const QVec& x); // CapabilityError on oracles
QMat jacobian(const ProblemInstance& inst, const QVec& x);
// D^2 P(x)(u): row r of the quadratic term evaluated twice at u; zero rows
// for affine atoms; CapabilityError for oracle atoms.
QVec second_derivative(const ProblemInstance& inst, const QVec& x, const QVec& u);

std::vector<double> eval_approx(const ProblemInstance& inst, const std::vector<double>& x);
std::vector<std::vector<double>> jacobian_approx(const ProblemInstance& inst,
                                                 const std::vector<double>& x);

// SetPoint of the anchor image P(anchor) in Lambda.
SetPoint anchor_point(const ProblemInstance& inst);

// {u : grad P(anchor) u in T_Lambda(P(anchor))}, one stratum per tangent
// piece (tags preserved).
ConeUnion linearized_cone(const ProblemInstance& inst, std::size_t face_cap = 100000);

// --- complementarity systems -------------------------------------------------

struct CSInstance {
    std::string name;
    std::vector<FunctionAtom> H;   // d rows, may be empty
    std::vector<FunctionAtom> Phi; // m rows
    std::vector<FunctionAtom> Psi; // m rows
    QVec anchor;
};

std::size_t cs_dim(const CSInstance& cs); // variable dimension
std::size_t cs_m(const CSInstance& cs);
std::size_t cs_d(const CSInstance& cs);
void validate(const CSInstance& cs); // exact atoms, shapes, anchor feasibility

struct IndexSets {
    std::vector<std::size_t> i00; // Phi_i = Psi_i = 0
    std::vector<std::size_t> i0p; // Phi_i = 0 < Psi_i
    std::vector<std::size_t> ip0; // Phi_i > 0 = Psi_i
};
IndexSets index_sets(const CSInstance& cs);

// P = (H, Phi_1, Psi_1, ..., Phi_m, Psi_m), Lambda = {0}^d x (compl)^m.
ProblemInstance cs_to_general(const CSInstance& cs);

// --- KKT systems -------------------------------------------------------------

// min f(x) s.t. g(x) <= 0, h(x) = 0, stationarity at (x, mu, lambda).
struct KKTInstance {
    std::string name;
    FunctionAtom f;                // one row (exact atom)
    std::vector<FunctionAtom> g;   // m rows
    std::vector<FunctionAtom> h;   // q rows, may be empty
    QVec x;
    QVec mu;
    QVec lam;
};

void validate(const KKTInstance& k);

// Variables z = (x, mu, lambda); H = (grad_x L, h), Phi = -g, Psi = mu.
CSInstance kkt_to_cs(const KKTInstance& k);

} // namespace conecq
