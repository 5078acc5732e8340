#pragma once

// Floating-point verification layer: infeasibility residuals, empirical
// calmness-modulus tables from sphere sampling around the anchor, and the
// natural residual for stationarity systems.  Everything here is an
// *observation* tool — verdicts always come from the exact checkers; these
// tables only corroborate them (a bounded ratio trend for certified
// instances, visible blow-up for certified failures).

#include <cstdint>

#include "conecq/model.hpp"

namespace conecq {

using DVec = std::vector<double>;

struct SamplingConfig {
    std::vector<double> radii{1e-1, 1e-2, 1e-3, 1e-4, 1e-5};
    std::size_t samples_per_radius = 32;
    std::uint64_t seed = 1234567891ull;
    double projection_tol = 1e-9;  // residual below which a search point counts as feasible
    double residual_floor = 1e-8;  // samples below this are excluded from ratios
    std::size_t jobs = 1;
    std::size_t nm_iters = 400; // local-search budget per start
    std::size_t nm_starts = 4;
};

// Euclidean distance from y to the structured set (closed forms per factor;
// cyclic projections for union pieces).
double set_distance(const StructuredSet& s, const DVec& y, double tol = 1e-12);

// dist(P(x), Lambda): the natural infeasibility residual of the system.
double residual(const ProblemInstance& inst, const DVec& x);

// Upper bound on dist(x, solution set), from (a) the anchor, (b) multistart
// local search on the residual, and (c) for affine maps, cyclic projection
// onto each polyhedral piece preimage.
double distance_to_solutions(const ProblemInstance& inst, const DVec& x,
                             const SamplingConfig& cfg = {});

struct ModulusRow {
    double radius = 0;
    std::size_t samples = 0;   // samples with residual above the floor
    double worst_ratio = 0;    // max dist/residual over those samples
    double mean_ratio = 0;
    bool all_feasible = false; // every sample fell below the residual floor
};

struct ModulusTable {
    std::vector<ModulusRow> rows;
    bool bounded = false; // worst ratios of the two smallest usable radii within a factor of 2
    double kappa_hat = 0; // worst ratio at the smallest usable radius
};

// Sphere sampling: directions are drawn once per sample index (keyed by the
// seed only), so every radius probes the same direction fan and the ratio
// trend along each direction is visible in the table.
ModulusTable empirical_modulus(const ProblemInstance& inst, const SamplingConfig& cfg = {});

// Natural residual of a stationarity system at z = (x, mu, lambda):
// max(|grad_x L|_inf, |h|_inf, |min(mu, -g)|_inf).
double kkt_residual(const KKTInstance& k, const DVec& z);

// Modulus table for a stationarity system with kkt_residual as denominator.
ModulusTable empirical_modulus_kkt(const KKTInstance& k, const SamplingConfig& cfg = {});

} // namespace conecq
