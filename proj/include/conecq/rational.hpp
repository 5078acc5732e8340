#pragma once

// Exact rational scalars (GMP) plus the small dense linear algebra the cone
// code needs.  Everything here is dimension-agnostic and value-semantic;
// matrices are row-major vectors of rows and may legitimately have zero rows
// (callers track the ambient dimension themselves).

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "conecq/errors.hpp"

namespace conecq {

using Rat = mpq_class;
using QVec = std::vector<Rat>;
using QMat = std::vector<QVec>;

// Canonicalized construction; mpq_class(2,4) would otherwise stay 2/4.
Rat rat(long num, long den = 1);

// Accepts "p/q", integers, and finite decimals ("-1.25", "3e-2"), all exact.
Rat parse_rat(const std::string& text);

// Canonical "p" or "p/q" with positive denominator.
std::string rat_str(const Rat& r);

double to_double(const Rat& r);
Rat from_double(double x); // exact binary64 -> rational; throws on NaN/inf

bool is_zero(const QVec& v);
Rat dot(const QVec& a, const QVec& b);
QVec add(const QVec& a, const QVec& b);
QVec sub(const QVec& a, const QVec& b);
QVec scale(const Rat& c, const QVec& v);
QVec neg(const QVec& v);
Rat norm2(const QVec& v); // squared Euclidean norm

QVec zeros(std::size_t n);
QMat identity(std::size_t n);
QVec unit(std::size_t n, std::size_t i);

QVec mat_vec(const QMat& m, const QVec& v);
QVec vec_mat(const QVec& v, const QMat& m); // v^T m, needs m nonempty
QMat mat_mul(const QMat& a, const QMat& b);
QMat transpose(const QMat& m, std::size_t cols);

// Scale to coprime integer entries; preserves orientation; zero stays zero.
QVec primitive(const QVec& v);
// Same, but the first nonzero entry is made positive (for lines and
// hyperplanes, where orientation is meaningless).
QVec primitive_signless(const QVec& v);

int compare(const QVec& a, const QVec& b); // lexicographic
bool lex_less(const QVec& a, const QVec& b);

std::size_t rank(QMat m);

// Reduced row echelon form, rows scaled to primitive integers and zero rows
// dropped: a canonical basis for the row space.
QMat rref(QMat m);

// Basis of {x in R^cols : m x = 0}, canonicalized via rref.
QMat nullspace(const QMat& m, std::size_t cols);

// One solution of m x = rhs (free variables set to zero), or nullopt.
std::optional<QVec> solve(QMat m, QVec rhs, std::size_t cols);

// Orthogonal projection of v onto the row space of `basis` (independent rows
// not required).  Used to reduce rays modulo lineality and for exact
// least-squares projections onto affine subspaces.
QVec project_rowspace(const QVec& v, const QMat& basis);

} // namespace conecq
