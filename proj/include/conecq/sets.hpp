#pragma once

// Structured constraint sets: finite products of simple factors (zero sets,
// orthants, finite unions of affine polyhedra, the 2-d complementarity set)
// and the four cone operations on them.  Unions of cones are kept in a
// canonical syntactic form (sorted generator keys, subsumed pieces removed)
// and compared piecewise.

#include <optional>
#include <variant>

#include "conecq/cone.hpp"

namespace conecq {

struct ZeroFactor {
    std::size_t dim = 1;
};
struct OrthantFactor {
    std::size_t dim = 1;
    int sign = +1; // +1: nonnegative orthant, -1: nonpositive
};
// {y : rows y <= rhs}
struct Polyhedron {
    QMat rows;
    QVec rhs;
};
struct UnionFactor {
    std::size_t dim = 0;
    std::vector<Polyhedron> pieces;
};
// {(a,b) : a >= 0, b >= 0, ab = 0}
struct ComplFactor {};

using Factor = std::variant<ZeroFactor, OrthantFactor, UnionFactor, ComplFactor>;

std::size_t factor_dim(const Factor& f);

struct StructuredSet {
    std::vector<Factor> factors;
    std::size_t dim() const;
};

// Membership certificate for one factor at one point.
struct FactorCert {
    std::vector<std::size_t> pieces;              // union: indices of containing pieces
    std::vector<std::vector<std::size_t>> active; // union: active rows per containing piece
    std::vector<std::size_t> tight;               // zero/orthant/compl: coordinates at zero
};
struct SetPoint {
    QVec y;
    std::vector<FactorCert> certs;
};

bool member(const StructuredSet& s, const QVec& y);
SetPoint locate(const StructuredSet& s, const QVec& y); // throws InfeasibleError

struct ConePiece {
    HCone cone;
    std::string tag;
};
// A finite union of closed polyhedral cones.  No pieces = the empty set
// (distinct from a single trivial piece, which is {0}).
struct ConeUnion {
    std::size_t dim = 0;
    std::vector<ConePiece> pieces;
};

bool is_void(const ConeUnion& u);
bool is_trivial_union(const ConeUnion& u);
ConeUnion canonical(const ConeUnion& u);
bool member(const ConeUnion& u, const QVec& y);
bool same_union(const ConeUnion& a, const ConeUnion& b); // canonical piecewise equality

// Strata of the arrangement of all pieces' rows restricted to each piece: on
// the relative interior of each returned cone, membership in every piece and
// the active rows within it are constant.  The zero cone is not returned.
std::vector<VCone> arrangement_strata(const std::vector<HCone>& pieces, std::size_t face_cap);

// Limiting normal cone of a finite union of H-cones at a point of the union
// (pieces are localized at `point` first).  Empty result iff `point` lies in
// no piece.
std::vector<HCone> union_limiting_normal(const std::vector<HCone>& pieces, const QVec& point,
                                         std::size_t face_cap);

ConeUnion tangent_cone(const StructuredSet& s, const SetPoint& p);
HCone regular_normal_cone(const StructuredSet& s, const SetPoint& p);
ConeUnion limiting_normal_cone(const StructuredSet& s, const SetPoint& p,
                               std::size_t face_cap = 100000);
// Empty union iff d is not tangent to s at p; d = 0 reproduces the limiting cone.
ConeUnion directional_normal_cone(const StructuredSet& s, const SetPoint& p, const QVec& d,
                                  std::size_t face_cap = 100000);

// Exact Euclidean projections (deterministic tie-breaks: lowest piece index).
// `selector`, when nonempty, pins union factors to one piece index and
// complementarity factors to one axis (0: first coordinate free, 1: second).
QVec project_exact(const StructuredSet& s, const QVec& y,
                   const std::vector<std::optional<std::size_t>>& selector = {});
QVec project_polyhedron(const QMat& rows, const QVec& rhs, const QVec& y);
QVec project_cone(const HCone& c, const QVec& y);

} // namespace conecq
