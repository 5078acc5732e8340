#pragma once

// Constraint-qualification checkers with three-valued verdicts.  HOLDS is
// only ever returned through an exact proof route, FAILS only together with
// a witness that reverify() re-checks from scratch, and everything else is
// UNKNOWN.  The directional checkers share one cascade:
//
//   R1  first-order cone condition holds on every direction stratum
//   R2  affine map into a finite union of polyhedra
//   R3  second-order cone condition holds on every direction stratum
//   R4  an exact divergent-multiplier sequence certifies failure
//   R5  inconclusive
//
// All candidate directions are exact relative-interior representatives of an
// arrangement stratification of the linearized cone, so every stratum has a
// constant activity pattern and the per-stratum tests are genuinely
// quantifier-free.

#include <optional>

#include "conecq/model.hpp"

namespace conecq {

enum class Status { HOLDS, FAILS, UNKNOWN };
const char* status_str(Status s);

// route identifiers (stable strings used in reports)
inline constexpr const char* kRoutePointCone = "point-cone-condition";
inline constexpr const char* kRouteFirstOrder = "first-order-cone-condition";
inline constexpr const char* kRouteAffinePoly = "affine-map-polyhedral-set";
inline constexpr const char* kRouteSecondOrder = "second-order-cone-condition";
inline constexpr const char* kRouteSequence = "divergent-multiplier-sequence";
inline constexpr const char* kRouteNone = "none";

struct SeqEntry {
    Rat t;     // step size t_k
    QVec x;    // x_k = anchor + t_k u
    QVec s;    // s_k, exact projection of P(x_k) onto the set
    QVec zeta; // zeta_k, exact projection of zeta onto the regular normal cone at s_k
};

struct Witness {
    QVec u;                       // direction (empty for point conditions)
    QVec zeta;                    // multiplier
    std::string stratum;          // provenance of the stratum / normal-cone piece
    std::vector<SeqEntry> prefix; // sequence prefix (sequence witnesses only)
    Rat t0 = Rat(0);              // falsifier parameters used (0 when unused)
    Rat shrink = Rat(0);
};

struct Verdict {
    Status status = Status::UNKNOWN;
    std::string route = kRouteNone;
    std::optional<Witness> witness;
    std::vector<std::string> notes;
};

struct FalsifierConfig {
    Rat t0 = Rat(1, 8);
    Rat shrink = Rat(1, 2);
    std::size_t depth = 12;
};

struct CheckConfig {
    std::size_t face_cap = 100000;  // arrangement/face budget
    std::size_t i00_cap = 8;        // max biactive pairs in the native CS route
    std::size_t soscms_samples = 8; // relint samples on strata of dimension >= 2
    FalsifierConfig falsifier;
};

// One direction-space stratum together with the multiplier cones the
// first/second-order conditions must rule out on it.
struct DirStratum {
    VCone gens;                   // the stratum (constant activity on its relint)
    QVec rep;                     // exact relative-interior representative
    std::string tag;              // containing tangent-piece tags
    std::vector<VCone> violation; // nontrivial pieces of N(P(anchor); J rep) ∩ ker J^T
    std::vector<std::string> violation_tags;
};

struct DirectionAnalysis {
    bool trivial = false; // linearized cone is {0}
    std::vector<DirStratum> strata;
};

DirectionAnalysis analyze_directions(const ProblemInstance& inst, const CheckConfig& cfg = {});

Verdict check_nnamcq(const ProblemInstance& inst, const CheckConfig& cfg = {});
Verdict check_foscms(const ProblemInstance& inst, const CheckConfig& cfg = {});
Verdict check_soscms(const ProblemInstance& inst, const CheckConfig& cfg = {});
Verdict check_dir_pseudo(const ProblemInstance& inst, const CheckConfig& cfg = {});
Verdict check_dir_quasi(const ProblemInstance& inst, const CheckConfig& cfg = {});

// Native complementarity-system route: index-set partitions of the biactive
// pairs instead of the generic product stratification.  Verdicts agree with
// running the generic checker on cs_to_general(cs).
Verdict check_cs_directional(const CSInstance& cs, bool pseudo, const CheckConfig& cfg = {});

enum class CheckKind { NNAMCQ, FOSCMS, SOSCMS, DirPseudo, DirQuasi };
const char* kind_str(CheckKind k);

// Re-check a FAILS witness from scratch (exact arithmetic throughout).
// Sequence witnesses are re-generated from (u, zeta, t0, shrink) and must
// reproduce the stored prefix entry by entry.
bool reverify(const ProblemInstance& inst, CheckKind kind, const Witness& w,
              const CheckConfig& cfg = {});

// Exact falsifier: attempt to certify failure of directional quasi-normality
// (componentwise sign condition) or pseudo-normality (aggregate condition)
// along direction u with limit multiplier zeta.
std::optional<std::vector<SeqEntry>> sequence_falsifier(const ProblemInstance& inst, const QVec& u,
                                                        const QVec& zeta, bool pseudo,
                                                        const FalsifierConfig& fc = {});

struct ChainReport {
    Verdict nnamcq, foscms, soscms, dir_pseudo, dir_quasi;
    bool subregular = false; // some sufficient condition was verified
    bool strong = false;     // linearized cone trivial (isolated-calmness strength)
    std::string conclusion;
};

// Runs the whole chain and cross-checks the verdicts against the known
// implications; an impossible combination raises InconsistencyError.
ChainReport report_chain(const ProblemInstance& inst, const CheckConfig& cfg = {});

} // namespace conecq
