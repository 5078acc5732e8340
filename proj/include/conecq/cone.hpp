#pragma once

// Exact polyhedral cones in two representations and the conversions between
// them (double description).  All generator output is canonicalized: rays are
// primitive integer vectors reduced modulo the lineality space and sorted,
// lines are a reduced-row-echelon basis.  Two cones are equal as sets iff
// their canonical V-forms are identical, which is what same_cone tests.

#include <cstddef>
#include <string>
#include <vector>

#include "conecq/rational.hpp"

namespace conecq {

// {y : ineq y <= 0, eq y = 0}
struct HCone {
    std::size_t dim = 0;
    QMat ineq;
    QMat eq;
};

// cone(rays) + span(lines)
struct VCone {
    std::size_t dim = 0;
    QMat rays;
    QMat lines;
};

// A face of an H-cone: the inequality rows forced to equality (closed under
// implication) plus the cone with those rows promoted.  `active` indexes the
// ineq rows of canonical(c), not the caller's row order.
struct Face {
    std::vector<std::size_t> active;
    HCone as_cone;
};

HCone make_hcone(std::size_t dim, QMat ineq, QMat eq = {});
VCone make_vcone(std::size_t dim, QMat rays, QMat lines = {});

// Full space / origin-only helpers.
HCone full_cone(std::size_t dim);
HCone zero_cone(std::size_t dim);

// Drop zero rows, scale rows primitive, dedup, sort; eq rows -> rref.
HCone canonical(const HCone& c);
// Reduce rays mod span(lines), primitive, dedup, sort; lines -> rref.
VCone canonical(const VCone& c);

bool contains(const HCone& c, const QVec& y);
std::vector<std::size_t> active_rows(const HCone& c, const QVec& y);

bool is_trivial(const HCone& c); // c == {0}
bool is_trivial(const VCone& c);

std::size_t cone_dim(const VCone& c); // dimension of the spanned subspace

// Double description.  Output of dd_h_to_v lists exactly the extreme rays
// (modulo lineality) and a lineality basis.
VCone dd_h_to_v(const HCone& c);
HCone dd_v_to_h(const VCone& c);

// Polar cone {z : <z,y> <= 0 for all y in c}.  The V-form polar of an H-cone
// is immediate (rows become generators) and vice versa.
VCone polar_v(const HCone& c);
HCone polar_h(const VCone& c);
HCone polar(const HCone& c);

// Complete face lattice, the cone itself included, minimal face last not
// guaranteed; throws CapacityError past `cap` faces.
std::vector<Face> faces(const HCone& c, std::size_t cap = 100000);

// Deterministic relative-interior point: positively weighted sum of the
// canonical generators.  `salt` varies the weights (same face, different
// point) for spot checks and sampling.  Throws on the trivial cone.
QVec relint_point(const VCone& c, unsigned salt = 0);
QVec relint_point(const HCone& c, unsigned salt = 0);

// m maps R^n -> R^k applied to a cone in R^n; exact image as a V-cone.
VCone linear_image(const QMat& m, const VCone& c);
// {x in R^n : m x in c}; `n` needed because m may have zero rows.
HCone linear_preimage(const QMat& m, std::size_t n, const HCone& c);

HCone intersect(const HCone& a, const HCone& b);
HCone product(const HCone& a, const HCone& b); // block concatenation

bool subset(const HCone& a, const HCone& b); // a's generators all in b
bool same_cone(const HCone& a, const HCone& b);
bool same_cone(const VCone& a, const VCone& b);

// Stable text key of the canonical V-form (dedup maps).
std::string cone_key(const VCone& c);
std::string cone_key(const HCone& c);

} // namespace conecq
