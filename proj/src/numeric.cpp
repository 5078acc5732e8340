#include "conecq/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <thread>

namespace conecq {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::uint64_t splitmix64(std::uint64_t& s) {
    s += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

double u01(std::uint64_t& s) { // uniform in (0,1)
    return (static_cast<double>(splitmix64(s) >> 11) + 0.5) * 0x1.0p-53;
}

// deterministic unit direction, keyed by (seed, stream): the same stream id
// yields the same direction regardless of radius
DVec unit_direction(std::uint64_t seed, std::uint64_t stream, std::size_t n) {
    std::uint64_t s = seed ^ (0x9E3779B97F4A7C15ull * (stream + 1));
    (void)splitmix64(s);
    DVec v(n, 0.0);
    for (std::size_t i = 0; i < n; i += 2) {
        double a = u01(s), b = u01(s);
        double r = std::sqrt(-2.0 * std::log(a));
        v[i] = r * std::cos(2.0 * kPi * b);
        if (i + 1 < n) v[i + 1] = r * std::sin(2.0 * kPi * b);
    }
    double norm = 0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    if (norm < 1e-300) {
        v.assign(n, 0.0);
        if (n > 0) v[0] = 1.0;
        return v;
    }
    for (double& x : v) x /= norm;
    return v;
}

double dnorm(const DVec& v) {
    double s = 0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

DVec dsub(const DVec& a, const DVec& b) {
    DVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

DVec to_dvec(const QVec& v) {
    DVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = to_double(v[i]);
    return r;
}

struct DPoly { // rows x <= rhs
    std::vector<DVec> rows;
    DVec rhs;
};

double poly_violation(const DPoly& p, const DVec& x) {
    double worst = 0;
    for (std::size_t i = 0; i < p.rows.size(); ++i) {
        double v = -p.rhs[i];
        for (std::size_t j = 0; j < x.size(); ++j) v += p.rows[i][j] * x[j];
        worst = std::max(worst, v);
    }
    return worst;
}

// cyclic increment projections onto the halfspaces; returns the projection of
// y onto the intersection when it is nonempty
DVec poly_project(const DPoly& p, const DVec& y, double tol, std::size_t max_sweeps = 600) {
    if (p.rows.empty()) return y;
    DVec x = y;
    std::vector<DVec> inc(p.rows.size(), DVec(y.size(), 0.0));
    std::vector<double> nsq(p.rows.size(), 0.0);
    for (std::size_t i = 0; i < p.rows.size(); ++i)
        for (double a : p.rows[i]) nsq[i] += a * a;
    for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
        double moved = 0;
        for (std::size_t i = 0; i < p.rows.size(); ++i) {
            if (nsq[i] <= 0) continue;
            DVec w(x.size());
            for (std::size_t j = 0; j < x.size(); ++j) w[j] = x[j] + inc[i][j];
            double val = -p.rhs[i];
            for (std::size_t j = 0; j < x.size(); ++j) val += p.rows[i][j] * w[j];
            DVec xn = w;
            if (val > 0) {
                double c = val / nsq[i];
                for (std::size_t j = 0; j < x.size(); ++j) xn[j] = w[j] - c * p.rows[i][j];
            }
            for (std::size_t j = 0; j < x.size(); ++j) {
                double newinc = w[j] - xn[j];
                moved += std::abs(newinc - inc[i][j]);
                inc[i][j] = newinc;
            }
            x = std::move(xn);
        }
        if (moved < tol) break;
    }
    return x;
}

double poly_distance(const DPoly& p, const DVec& y, double tol) {
    DVec x = poly_project(p, y, tol);
    if (poly_violation(p, x) > 1e-7) return std::numeric_limits<double>::infinity();
    return dnorm(dsub(y, x));
}

DPoly poly_of(const Polyhedron& poly) {
    DPoly p;
    for (const QVec& r : poly.rows) p.rows.push_back(to_dvec(r));
    p.rhs = to_dvec(poly.rhs);
    return p;
}

// classic reflect/expand/contract/shrink simplex search
DVec nelder_mead(const std::function<double(const DVec&)>& f, const DVec& start, double step,
                 std::size_t iters) {
    const std::size_t n = start.size();
    if (n == 0) return start;
    std::vector<DVec> pts(n + 1, start);
    for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += step;
    std::vector<double> val(n + 1);
    for (std::size_t i = 0; i <= n; ++i) val[i] = f(pts[i]);
    for (std::size_t it = 0; it < iters; ++it) {
        std::vector<std::size_t> ord(n + 1);
        for (std::size_t i = 0; i <= n; ++i) ord[i] = i;
        std::sort(ord.begin(), ord.end(), [&](std::size_t a, std::size_t b) { return val[a] < val[b]; });
        std::size_t best = ord[0], worst = ord[n], second = ord[n - 1];
        if (val[worst] - val[best] < 1e-30) break;
        DVec centroid(n, 0.0);
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == worst) continue;
            for (std::size_t j = 0; j < n; ++j) centroid[j] += pts[i][j];
        }
        for (double& c : centroid) c /= static_cast<double>(n);
        auto blend = [&](double coef) {
            DVec p(n);
            for (std::size_t j = 0; j < n; ++j)
                p[j] = centroid[j] + coef * (pts[worst][j] - centroid[j]);
            return p;
        };
        DVec refl = blend(-1.0);
        double frefl = f(refl);
        if (frefl < val[best]) {
            DVec exp = blend(-2.0);
            double fexp = f(exp);
            if (fexp < frefl) {
                pts[worst] = std::move(exp);
                val[worst] = fexp;
            } else {
                pts[worst] = std::move(refl);
                val[worst] = frefl;
            }
        } else if (frefl < val[second]) {
            pts[worst] = std::move(refl);
            val[worst] = frefl;
        } else {
            DVec con = blend(0.5);
            double fcon = f(con);
            if (fcon < val[worst]) {
                pts[worst] = std::move(con);
                val[worst] = fcon;
            } else {
                for (std::size_t i = 0; i <= n; ++i) {
                    if (i == best) continue;
                    for (std::size_t j = 0; j < n; ++j)
                        pts[i][j] = pts[best][j] + 0.5 * (pts[i][j] - pts[best][j]);
                    val[i] = f(pts[i]);
                }
            }
        }
    }
    std::size_t bi = 0;
    for (std::size_t i = 1; i <= n; ++i)
        if (val[i] < val[bi]) bi = i;
    return pts[bi];
}

// per-factor piece lists as float polyhedra (for the affine preimage route)
std::vector<std::vector<DPoly>> factor_pieces_float(const StructuredSet& s) {
    std::vector<std::vector<DPoly>> out;
    for (const Factor& f : s.factors) {
        std::vector<DPoly> pieces;
        std::size_t d = factor_dim(f);
        if (std::holds_alternative<ZeroFactor>(f)) {
            DPoly p;
            for (std::size_t i = 0; i < d; ++i)
                for (double sign : {1.0, -1.0}) {
                    DVec r(d, 0.0);
                    r[i] = sign;
                    p.rows.push_back(r);
                    p.rhs.push_back(0.0);
                }
            pieces.push_back(std::move(p));
        } else if (const auto* o = std::get_if<OrthantFactor>(&f)) {
            DPoly p;
            for (std::size_t i = 0; i < d; ++i) {
                DVec r(d, 0.0);
                r[i] = -o->sign;
                p.rows.push_back(r);
                p.rhs.push_back(0.0);
            }
            pieces.push_back(std::move(p));
        } else if (const auto* u = std::get_if<UnionFactor>(&f)) {
            for (const Polyhedron& poly : u->pieces) pieces.push_back(poly_of(poly));
        } else {
            for (int axis = 0; axis < 2; ++axis) {
                DPoly p; // one branch of the complementarity set
                for (int i = 0; i < 2; ++i) {
                    DVec r(2, 0.0);
                    r[i] = -1.0;
                    p.rows.push_back(r); // both components >= 0
                    p.rhs.push_back(0.0);
                    if (i != axis) {
                        DVec rr(2, 0.0);
                        rr[i] = 1.0;
                        p.rows.push_back(rr); // the other component pinned to 0
                        p.rhs.push_back(0.0);
                    }
                }
                pieces.push_back(std::move(p));
            }
        }
        out.push_back(std::move(pieces));
    }
    return out;
}

} // namespace

double set_distance(const StructuredSet& s, const DVec& y, double tol) {
    if (y.size() != s.dim()) throw DimensionError("set_distance: bad point");
    double acc = 0;
    std::size_t off = 0;
    for (const Factor& f : s.factors) {
        std::size_t d = factor_dim(f);
        DVec v(y.begin() + static_cast<long>(off), y.begin() + static_cast<long>(off + d));
        double d2 = 0;
        if (std::holds_alternative<ZeroFactor>(f)) {
            for (double x : v) d2 += x * x;
        } else if (const auto* o = std::get_if<OrthantFactor>(&f)) {
            for (double x : v) {
                double viol = o->sign > 0 ? std::min(x, 0.0) : std::max(x, 0.0);
                d2 += viol * viol;
            }
        } else if (const auto* u = std::get_if<UnionFactor>(&f)) {
            double best = std::numeric_limits<double>::infinity();
            for (const Polyhedron& poly : u->pieces)
                best = std::min(best, poly_distance(poly_of(poly), v, tol));
            d2 = best * best;
        } else {
            double a = v[0], b = v[1];
            double d1sq = std::min(a, 0.0) * std::min(a, 0.0) + b * b;
            double d2sq = a * a + std::min(b, 0.0) * std::min(b, 0.0);
            d2 = std::min(d1sq, d2sq);
        }
        acc += d2;
        off += d;
    }
    return std::sqrt(acc);
}

double residual(const ProblemInstance& inst, const DVec& x) {
    return set_distance(inst.lambda, eval_approx(inst, x));
}

double distance_to_solutions(const ProblemInstance& inst, const DVec& x,
                             const SamplingConfig& cfg) {
    const std::size_t n = in_dim(inst);
    DVec anchor = to_dvec(inst.anchor);
    double best = dnorm(dsub(x, anchor)); // the anchor is always a solution

    // affine route: exact polyhedral preimages of every piece combination
    if (affine_map(inst)) {
        QMat Jq = jacobian(inst, inst.anchor);
        QVec cq = eval_exact(inst, zeros(n));
        std::vector<DVec> A;
        for (const QVec& r : Jq) A.push_back(to_dvec(r));
        DVec c = to_dvec(cq);
        auto parts = factor_pieces_float(inst.lambda);
        std::size_t total = 1;
        for (const auto& p : parts) total = std::min<std::size_t>(total * p.size(), 65);
        if (total <= 64) {
            for (std::size_t combo = 0; combo < total; ++combo) {
                // compose the global piece (block diagonal) and pull back
                DPoly pre;
                std::size_t off = 0, rem = combo;
                for (std::size_t fi = 0; fi < parts.size(); ++fi) {
                    const DPoly& piece = parts[fi][rem % parts[fi].size()];
                    rem /= parts[fi].size();
                    std::size_t d = factor_dim(inst.lambda.factors[fi]);
                    for (std::size_t ri = 0; ri < piece.rows.size(); ++ri) {
                        DVec row(n, 0.0);
                        double rhs = piece.rhs[ri];
                        for (std::size_t j = 0; j < d; ++j) {
                            double coef = piece.rows[ri][j];
                            if (coef == 0.0) continue;
                            rhs -= coef * c[off + j];
                            for (std::size_t l = 0; l < n; ++l) row[l] += coef * A[off + j][l];
                        }
                        pre.rows.push_back(std::move(row));
                        pre.rhs.push_back(rhs);
                    }
                    off += d;
                }
                best = std::min(best, poly_distance(pre, x, 1e-13));
            }
        }
    }

    // multistart local search on the residual
    double scale = std::max(1e-4, 0.25 * dnorm(dsub(x, anchor)));
    auto obj = [&](const DVec& p) { return residual(inst, p); };
    std::vector<DVec> starts{x, anchor};
    for (std::size_t i = 2; i < cfg.nm_starts; ++i) {
        DVec dir = unit_direction(cfg.seed, 7000 + i, n);
        DVec s = x;
        for (std::size_t j = 0; j < n; ++j) s[j] += scale * dir[j];
        starts.push_back(std::move(s));
    }
    for (const DVec& s : starts) {
        DVec p = nelder_mead(obj, s, scale, cfg.nm_iters);
        if (residual(inst, p) <= cfg.projection_tol) best = std::min(best, dnorm(dsub(x, p)));
    }
    return best;
}

namespace {

ModulusTable modulus_table(const ProblemInstance& dist_inst,
                           const std::function<double(const DVec&)>& res_fn, std::size_t dim,
                           const DVec& center, const SamplingConfig& cfg) {
    ModulusTable table;
    std::vector<double> radii = cfg.radii;
    std::sort(radii.begin(), radii.end(), std::greater<double>());
    for (double r : radii) {
        ModulusRow row;
        row.radius = r;
        std::vector<double> ratios(cfg.samples_per_radius,
                                   std::numeric_limits<double>::quiet_NaN());
        auto work = [&](std::size_t j) {
            DVec dir = unit_direction(cfg.seed, j, dim);
            DVec x = center;
            for (std::size_t l = 0; l < dim; ++l) x[l] += r * dir[l];
            double res = res_fn(x);
            if (!(res > cfg.residual_floor)) return; // feasible to this tolerance
            double dist = distance_to_solutions(dist_inst, x, cfg);
            ratios[j] = dist / res;
        };
        if (cfg.jobs <= 1) {
            for (std::size_t j = 0; j < cfg.samples_per_radius; ++j) work(j);
        } else {
            std::vector<std::thread> pool;
            for (std::size_t w = 0; w < cfg.jobs; ++w)
                pool.emplace_back([&, w] {
                    for (std::size_t j = w; j < cfg.samples_per_radius; j += cfg.jobs) work(j);
                });
            for (std::thread& t : pool) t.join();
        }
        double sum = 0;
        for (double q : ratios) {
            if (std::isnan(q)) continue;
            row.samples += 1;
            row.worst_ratio = std::max(row.worst_ratio, q);
            sum += q;
        }
        row.mean_ratio = row.samples ? sum / static_cast<double>(row.samples) : 0.0;
        row.all_feasible = row.samples == 0;
        table.rows.push_back(row);
    }
    std::vector<const ModulusRow*> usable;
    for (const ModulusRow& row : table.rows)
        if (row.samples > 0) usable.push_back(&row);
    if (usable.size() < 2) {
        table.bounded = true; // nothing to compare: vacuously stable
        table.kappa_hat = usable.empty() ? 0.0 : usable.back()->worst_ratio;
    } else {
        const ModulusRow* small = usable.back();
        const ModulusRow* prev = usable[usable.size() - 2];
        table.bounded = small->worst_ratio <= 2.0 * prev->worst_ratio + 1e-12;
        table.kappa_hat = small->worst_ratio;
    }
    return table;
}

} // namespace

ModulusTable empirical_modulus(const ProblemInstance& inst, const SamplingConfig& cfg) {
    DVec center = to_dvec(inst.anchor);
    auto res = [&](const DVec& x) { return residual(inst, x); };
    return modulus_table(inst, res, in_dim(inst), center, cfg);
}

double kkt_residual(const KKTInstance& k, const DVec& z) {
    CSInstance cs = kkt_to_cs(k);
    ProblemInstance g = cs_to_general(cs);
    std::size_t dd = cs_d(cs);
    std::size_t m = cs_m(cs);
    DVec y = eval_approx(g, z);
    double worst = 0;
    for (std::size_t i = 0; i < dd; ++i) worst = std::max(worst, std::abs(y[i]));
    for (std::size_t i = 0; i < m; ++i)
        worst = std::max(worst, std::abs(std::min(y[dd + 2 * i], y[dd + 2 * i + 1])));
    return worst;
}

ModulusTable empirical_modulus_kkt(const KKTInstance& k, const SamplingConfig& cfg) {
    CSInstance cs = kkt_to_cs(k);
    ProblemInstance g = cs_to_general(cs);
    const std::size_t dd = cs_d(cs);
    const std::size_t m = cs_m(cs);
    auto res = [&](const DVec& z) {
        DVec y = eval_approx(g, z);
        double worst = 0;
        for (std::size_t i = 0; i < dd; ++i) worst = std::max(worst, std::abs(y[i]));
        for (std::size_t i = 0; i < m; ++i)
            worst = std::max(worst, std::abs(std::min(y[dd + 2 * i], y[dd + 2 * i + 1])));
        return worst;
    };
    return modulus_table(g, res, in_dim(g), to_dvec(g.anchor), cfg);
}

} // namespace conecq
