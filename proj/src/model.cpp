#include "conecq/model.hpp"

#include <algorithm>
#include <cmath>

namespace conecq {

std::size_t atom_in_dim(const FunctionAtom& a) {
    if (const auto* af = std::get_if<AffineAtom>(&a)) return af->A.empty() ? 0 : af->A[0].size();
    if (const auto* q = std::get_if<QuadAtom>(&a)) return q->A.empty() ? 0 : q->A[0].size();
    return std::get<OracleAtom>(a).in_dim;
}

std::size_t atom_out_dim(const FunctionAtom& a) {
    if (const auto* af = std::get_if<AffineAtom>(&a)) return af->c.size();
    if (const auto* q = std::get_if<QuadAtom>(&a)) return q->c.size();
    return std::get<OracleAtom>(a).out_dim;
}

std::size_t in_dim(const ProblemInstance& inst) {
    return inst.atoms.empty() ? 0 : atom_in_dim(inst.atoms[0]);
}

std::size_t out_dim(const ProblemInstance& inst) {
    std::size_t m = 0;
    for (const FunctionAtom& a : inst.atoms) m += atom_out_dim(a);
    return m;
}

bool exact(const ProblemInstance& inst) {
    for (const FunctionAtom& a : inst.atoms)
        if (std::holds_alternative<OracleAtom>(a)) return false;
    return true;
}

bool affine_map(const ProblemInstance& inst) {
    for (const FunctionAtom& a : inst.atoms) {
        if (std::holds_alternative<OracleAtom>(a)) return false;
        if (const auto* q = std::get_if<QuadAtom>(&a))
            for (const QMat& m : q->Q)
                for (const QVec& r : m)
                    if (!is_zero(r)) return false;
    }
    return true;
}

namespace {

void check_atom_shapes(const FunctionAtom& a) {
    if (const auto* af = std::get_if<AffineAtom>(&a)) {
        if (af->A.size() != af->c.size()) throw DimensionError("affine atom: A rows != c length");
        std::size_t n = atom_in_dim(a);
        for (const QVec& r : af->A)
            if (r.size() != n) throw DimensionError("affine atom: ragged A");
    } else if (const auto* q = std::get_if<QuadAtom>(&a)) {
        if (q->A.size() != q->c.size() || q->Q.size() != q->c.size())
            throw DimensionError("quadratic atom: row count mismatch");
        std::size_t n = atom_in_dim(a);
        for (const QVec& r : q->A)
            if (r.size() != n) throw DimensionError("quadratic atom: ragged A");
        for (const QMat& m : q->Q) {
            if (m.size() != n) throw DimensionError("quadratic atom: Q shape");
            for (std::size_t i = 0; i < n; ++i) {
                if (m[i].size() != n) throw DimensionError("quadratic atom: Q shape");
                for (std::size_t j = 0; j < i; ++j)
                    if (cmp(m[i][j], m[j][i]) != 0)
                        throw DimensionError("quadratic atom: Q not symmetric");
            }
        }
    }
}

} // namespace

void validate(const ProblemInstance& inst) {
    if (inst.atoms.empty()) throw DimensionError("instance without function atoms");
    std::size_t n = atom_in_dim(inst.atoms[0]);
    for (const FunctionAtom& a : inst.atoms) {
        check_atom_shapes(a);
        if (atom_in_dim(a) != n) throw DimensionError("atoms disagree on input dimension");
    }
    if (inst.anchor.size() != n) throw DimensionError("anchor has wrong dimension");
    if (out_dim(inst) != inst.lambda.dim()) throw DimensionError("P output dimension != set dimension");
    if (exact(inst)) locate(inst.lambda, eval_exact(inst, inst.anchor)); // throws if infeasible
}

QVec eval_exact(const ProblemInstance& inst, const QVec& x) {
    QVec out;
    for (const FunctionAtom& a : inst.atoms) {
        if (const auto* af = std::get_if<AffineAtom>(&a)) {
            QVec v = add(mat_vec(af->A, x), af->c);
            out.insert(out.end(), v.begin(), v.end());
        } else if (const auto* q = std::get_if<QuadAtom>(&a)) {
            for (std::size_t r = 0; r < q->c.size(); ++r) {
                Rat val = dot(x, mat_vec(q->Q[r], x)) / 2 + dot(q->A[r], x) + q->c[r];
                out.push_back(val);
            }
        } else {
            throw CapabilityError("oracle atom in exact evaluation");
        }
    }
    return out;
}

QMat jacobian(const ProblemInstance& inst, const QVec& x) {
    QMat rows;
    for (const FunctionAtom& a : inst.atoms) {
        if (const auto* af = std::get_if<AffineAtom>(&a)) {
            for (const QVec& r : af->A) rows.push_back(r);
        } else if (const auto* q = std::get_if<QuadAtom>(&a)) {
            for (std::size_t r = 0; r < q->c.size(); ++r)
                rows.push_back(add(mat_vec(q->Q[r], x), q->A[r]));
        } else {
            throw CapabilityError("oracle atom has no exact jacobian");
        }
    }
    return rows;
}

QVec second_derivative(const ProblemInstance& inst, const QVec& x, const QVec& u) {
    (void)x; // constant for the exact atom classes
    QVec out;
    for (const FunctionAtom& a : inst.atoms) {
        if (const auto* af = std::get_if<AffineAtom>(&a)) {
            for (std::size_t r = 0; r < af->c.size(); ++r) out.push_back(Rat(0));
        } else if (const auto* q = std::get_if<QuadAtom>(&a)) {
            for (std::size_t r = 0; r < q->c.size(); ++r) out.push_back(dot(u, mat_vec(q->Q[r], u)));
        } else {
            throw CapabilityError("oracle atom has no exact second derivative");
        }
    }
    return out;
}

std::vector<double> eval_approx(const ProblemInstance& inst, const std::vector<double>& x) {
    std::vector<double> out;
    for (const FunctionAtom& a : inst.atoms) {
        if (const auto* oa = std::get_if<OracleAtom>(&a)) {
            std::vector<double> v = oa->eval(x);
            out.insert(out.end(), v.begin(), v.end());
        } else if (const auto* af = std::get_if<AffineAtom>(&a)) {
            for (std::size_t r = 0; r < af->c.size(); ++r) {
                double s = to_double(af->c[r]);
                for (std::size_t j = 0; j < x.size(); ++j) s += to_double(af->A[r][j]) * x[j];
                out.push_back(s);
            }
        } else {
            const auto* q = std::get_if<QuadAtom>(&a);
            for (std::size_t r = 0; r < q->c.size(); ++r) {
                double s = to_double(q->c[r]);
                for (std::size_t j = 0; j < x.size(); ++j) s += to_double(q->A[r][j]) * x[j];
                for (std::size_t i = 0; i < x.size(); ++i) {
                    double qi = 0;
                    for (std::size_t j = 0; j < x.size(); ++j) qi += to_double(q->Q[r][i][j]) * x[j];
                    s += 0.5 * x[i] * qi;
                }
                out.push_back(s);
            }
        }
    }
    return out;
}

std::vector<std::vector<double>> jacobian_approx(const ProblemInstance& inst,
                                                 const std::vector<double>& x) {
    std::vector<std::vector<double>> rows;
    for (const FunctionAtom& a : inst.atoms) {
        if (const auto* oa = std::get_if<OracleAtom>(&a)) {
            if (oa->jac) {
                auto j = oa->jac(x);
                rows.insert(rows.end(), j.begin(), j.end());
            } else {
                // central differences
                const double h = 1e-6;
                std::vector<std::vector<double>> cols;
                for (std::size_t j = 0; j < x.size(); ++j) {
                    std::vector<double> xp = x, xm = x;
                    xp[j] += h;
                    xm[j] -= h;
                    std::vector<double> fp = oa->eval(xp), fm = oa->eval(xm);
                    std::vector<double> col(fp.size());
                    for (std::size_t r = 0; r < fp.size(); ++r) col[r] = (fp[r] - fm[r]) / (2 * h);
                    cols.push_back(std::move(col));
                }
                for (std::size_t r = 0; r < oa->out_dim; ++r) {
                    std::vector<double> row(x.size());
                    for (std::size_t j = 0; j < x.size(); ++j) row[j] = cols[j][r];
                    rows.push_back(std::move(row));
                }
            }
        } else if (const auto* af = std::get_if<AffineAtom>(&a)) {
            for (const QVec& r : af->A) {
                std::vector<double> row(r.size());
                for (std::size_t j = 0; j < r.size(); ++j) row[j] = to_double(r[j]);
                rows.push_back(std::move(row));
            }
        } else {
            const auto* q = std::get_if<QuadAtom>(&a);
            for (std::size_t r = 0; r < q->c.size(); ++r) {
                std::vector<double> row(x.size());
                for (std::size_t i = 0; i < x.size(); ++i) {
                    double s = to_double(q->A[r][i]);
                    for (std::size_t j = 0; j < x.size(); ++j) s += to_double(q->Q[r][i][j]) * x[j];
                    row[i] = s;
                }
                rows.push_back(std::move(row));
            }
        }
    }
    return rows;
}

SetPoint anchor_point(const ProblemInstance& inst) {
    return locate(inst.lambda, eval_exact(inst, inst.anchor));
}

ConeUnion linearized_cone(const ProblemInstance& inst, std::size_t face_cap) {
    QMat J = jacobian(inst, inst.anchor);
    SetPoint p = anchor_point(inst);
    ConeUnion T = tangent_cone(inst.lambda, p);
    (void)face_cap;
    ConeUnion L;
    L.dim = in_dim(inst);
    for (const ConePiece& piece : T.pieces)
        L.pieces.push_back({linear_preimage(J, in_dim(inst), piece.cone), piece.tag});
    // dedup identical strata, keep all distinct ones (no subsumption: strata
    // carry their piece provenance)
    std::vector<ConePiece> kept;
    std::vector<std::string> keys;
    for (ConePiece& piece : L.pieces) {
        std::string k = cone_key(piece.cone);
        bool merged = false;
        for (std::size_t i = 0; i < kept.size(); ++i)
            if (keys[i] == k) {
                kept[i].tag += "+" + piece.tag;
                merged = true;
                break;
            }
        if (!merged) {
            keys.push_back(std::move(k));
            kept.push_back(std::move(piece));
        }
    }
    L.pieces = std::move(kept);
    return L;
}

// --- complementarity systems -------------------------------------------------

namespace {

std::size_t stack_out(const std::vector<FunctionAtom>& atoms) {
    std::size_t m = 0;
    for (const FunctionAtom& a : atoms) m += atom_out_dim(a);
    return m;
}

std::size_t stack_in(const std::vector<FunctionAtom>& atoms) {
    return atoms.empty() ? 0 : atom_in_dim(atoms[0]);
}

// one materialized polynomial row: (1/2) x^T Q x + A x + c, Q empty == zero
struct RowPoly {
    QMat Q;
    QVec A;
    Rat c;
};

std::vector<RowPoly> materialize(const std::vector<FunctionAtom>& atoms, std::size_t n) {
    std::vector<RowPoly> rows;
    for (const FunctionAtom& a : atoms) {
        check_atom_shapes(a);
        if (atom_in_dim(a) != n) throw DimensionError("stack atoms disagree on input dimension");
        if (const auto* af = std::get_if<AffineAtom>(&a)) {
            for (std::size_t r = 0; r < af->c.size(); ++r) rows.push_back({{}, af->A[r], af->c[r]});
        } else if (const auto* q = std::get_if<QuadAtom>(&a)) {
            for (std::size_t r = 0; r < q->c.size(); ++r) rows.push_back({q->Q[r], q->A[r], q->c[r]});
        } else {
            throw CapabilityError("oracle atom in an exact system form");
        }
    }
    return rows;
}

FunctionAtom build_atom(const std::vector<RowPoly>& rows, std::size_t n) {
    bool quad = false;
    for (const RowPoly& r : rows)
        if (!r.Q.empty()) quad = true;
    if (!quad) {
        AffineAtom a;
        for (const RowPoly& r : rows) {
            a.A.push_back(r.A);
            a.c.push_back(r.c);
        }
        return a;
    }
    QuadAtom q;
    for (const RowPoly& r : rows) {
        q.Q.push_back(r.Q.empty() ? QMat(n, zeros(n)) : r.Q);
        q.A.push_back(r.A);
        q.c.push_back(r.c);
    }
    return q;
}

} // namespace

std::size_t cs_dim(const CSInstance& cs) {
    if (!cs.Phi.empty()) return stack_in(cs.Phi);
    return stack_in(cs.H);
}

std::size_t cs_m(const CSInstance& cs) { return stack_out(cs.Phi); }

std::size_t cs_d(const CSInstance& cs) { return stack_out(cs.H); }

void validate(const CSInstance& cs) {
    if (stack_out(cs.Phi) != stack_out(cs.Psi))
        throw DimensionError("Phi and Psi have different row counts");
    if (stack_out(cs.Phi) == 0 && stack_out(cs.H) == 0)
        throw DimensionError("complementarity system without rows");
    ProblemInstance g = cs_to_general(cs);
    validate(g);
}

IndexSets index_sets(const CSInstance& cs) {
    ProblemInstance g = cs_to_general(cs);
    QVec y = eval_exact(g, cs.anchor);
    std::size_t d = cs_d(cs);
    std::size_t m = cs_m(cs);
    IndexSets s;
    for (std::size_t i = 0; i < m; ++i) {
        const Rat& phi = y[d + 2 * i];
        const Rat& psi = y[d + 2 * i + 1];
        if (sgn(phi) < 0 || sgn(psi) < 0 || sgn(phi * psi) != 0)
            throw InfeasibleError("anchor violates complementarity");
        if (sgn(phi) == 0 && sgn(psi) == 0)
            s.i00.push_back(i);
        else if (sgn(phi) == 0)
            s.i0p.push_back(i);
        else
            s.ip0.push_back(i);
    }
    return s;
}

ProblemInstance cs_to_general(const CSInstance& cs) {
    std::size_t n = cs_dim(cs);
    std::vector<RowPoly> hrows = materialize(cs.H, n);
    std::vector<RowPoly> frows = materialize(cs.Phi, n);
    std::vector<RowPoly> prows = materialize(cs.Psi, n);
    if (frows.size() != prows.size()) throw DimensionError("Phi and Psi have different row counts");
    std::vector<RowPoly> all = hrows;
    for (std::size_t i = 0; i < frows.size(); ++i) {
        all.push_back(frows[i]);
        all.push_back(prows[i]);
    }
    ProblemInstance inst;
    inst.name = cs.name;
    inst.atoms.push_back(build_atom(all, n));
    if (!hrows.empty()) inst.lambda.factors.push_back(ZeroFactor{hrows.size()});
    for (std::size_t i = 0; i < frows.size(); ++i) inst.lambda.factors.push_back(ComplFactor{});
    inst.anchor = cs.anchor;
    return inst;
}

// --- KKT systems -------------------------------------------------------------

void validate(const KKTInstance& k) {
    if (atom_out_dim(k.f) != 1) throw DimensionError("objective must have one row");
    validate(kkt_to_cs(k)); // shape + stationarity + complementarity at the anchor
}

CSInstance kkt_to_cs(const KKTInstance& k) {
    std::size_t p = k.x.size();
    std::vector<RowPoly> frow = materialize({k.f}, p);
    std::vector<RowPoly> grows = materialize(k.g, p);
    std::vector<RowPoly> hrows = materialize(k.h, p);
    std::size_t m = grows.size();
    std::size_t q = hrows.size();
    if (k.mu.size() != m) throw DimensionError("multiplier count != inequality rows");
    if (k.lam.size() != q) throw DimensionError("multiplier count != equality rows");
    const std::size_t N = p + m + q;

    auto lift_vec = [&](const QVec& v) { // x-space row -> z-space row
        QVec r = zeros(N);
        for (std::size_t j = 0; j < p; ++j) r[j] = v[j];
        return r;
    };
    auto lift_mat = [&](const QMat& mm) {
        QMat r(N, zeros(N));
        for (std::size_t i = 0; i < mm.size(); ++i)
            for (std::size_t j = 0; j < mm.size(); ++j) r[i][j] = mm[i][j];
        return r;
    };

    // stationarity rows: grad_x L = grad f + sum mu_i grad g_i + sum lam_j grad h_j
    std::vector<RowPoly> stat;
    for (std::size_t kk = 0; kk < p; ++kk) {
        RowPoly row;
        row.A = zeros(N);
        row.c = frow[0].A[kk]; // constant part of (grad f)_k
        if (!frow[0].Q.empty())
            for (std::size_t l = 0; l < p; ++l) row.A[l] += frow[0].Q[kk][l];
        QMat Q(N, zeros(N));
        bool has_q = false;
        for (std::size_t i = 0; i < m; ++i) {
            row.A[p + i] += grows[i].A[kk]; // mu_i * const part of (grad g_i)_k
            if (!grows[i].Q.empty())
                for (std::size_t l = 0; l < p; ++l) {
                    const Rat& qv = grows[i].Q[kk][l];
                    if (sgn(qv) == 0) continue;
                    Q[l][p + i] += qv;
                    Q[p + i][l] += qv;
                    has_q = true;
                }
        }
        for (std::size_t j = 0; j < q; ++j) {
            row.A[p + m + j] += hrows[j].A[kk];
            if (!hrows[j].Q.empty())
                for (std::size_t l = 0; l < p; ++l) {
                    const Rat& qv = hrows[j].Q[kk][l];
                    if (sgn(qv) == 0) continue;
                    Q[l][p + m + j] += qv;
                    Q[p + m + j][l] += qv;
                    has_q = true;
                }
        }
        if (has_q) row.Q = std::move(Q);
        stat.push_back(std::move(row));
    }
    for (const RowPoly& hr : hrows) {
        RowPoly row;
        row.Q = hr.Q.empty() ? QMat{} : lift_mat(hr.Q);
        row.A = lift_vec(hr.A);
        row.c = hr.c;
        stat.push_back(std::move(row));
    }
    std::vector<RowPoly> phi;
    for (const RowPoly& gr : grows) {
        RowPoly row;
        if (!gr.Q.empty()) {
            row.Q = lift_mat(gr.Q);
            for (QVec& r : row.Q)
                for (Rat& x : r) x = -x;
        }
        row.A = neg(lift_vec(gr.A));
        row.c = -gr.c;
        phi.push_back(std::move(row));
    }
    std::vector<RowPoly> psi;
    for (std::size_t i = 0; i < m; ++i) {
        RowPoly row;
        row.A = unit(N, p + i);
        row.c = 0;
        psi.push_back(std::move(row));
    }

    CSInstance cs;
    cs.name = k.name;
    if (!stat.empty()) cs.H.push_back(build_atom(stat, N));
    if (m > 0) {
        cs.Phi.push_back(build_atom(phi, N));
        cs.Psi.push_back(build_atom(psi, N));
    }
    cs.anchor = k.x;
    cs.anchor.insert(cs.anchor.end(), k.mu.begin(), k.mu.end());
    cs.anchor.insert(cs.anchor.end(), k.lam.begin(), k.lam.end());
    return cs;
}

} // namespace conecq
