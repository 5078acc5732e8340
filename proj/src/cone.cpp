#include "conecq/cone.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace conecq {

HCone make_hcone(std::size_t dim, QMat ineq, QMat eq) {
    for (const QVec& r : ineq)
        if (r.size() != dim) throw DimensionError("hcone: bad row length");
    for (const QVec& r : eq)
        if (r.size() != dim) throw DimensionError("hcone: bad row length");
    return HCone{dim, std::move(ineq), std::move(eq)};
}

VCone make_vcone(std::size_t dim, QMat rays, QMat lines) {
    for (const QVec& r : rays)
        if (r.size() != dim) throw DimensionError("vcone: bad generator length");
    for (const QVec& r : lines)
        if (r.size() != dim) throw DimensionError("vcone: bad generator length");
    return canonical(VCone{dim, std::move(rays), std::move(lines)});
}

HCone full_cone(std::size_t dim) { return HCone{dim, {}, {}}; }

HCone zero_cone(std::size_t dim) { return HCone{dim, {}, identity(dim)}; }

HCone canonical(const HCone& c) {
    HCone out;
    out.dim = c.dim;
    std::set<QVec, decltype(&lex_less)> seen(&lex_less);
    for (const QVec& r : c.ineq) {
        QVec p = primitive(r);
        if (is_zero(p)) continue;
        if (seen.insert(p).second) out.ineq.push_back(p);
    }
    std::sort(out.ineq.begin(), out.ineq.end(), lex_less);
    out.eq = rref(c.eq);
    return out;
}

VCone canonical(const VCone& c) {
    VCone out;
    out.dim = c.dim;
    out.lines = rref(c.lines);
    // leading columns of the rref lines, used to reduce rays mod lineality
    std::vector<std::size_t> lead;
    for (const QVec& l : out.lines) {
        std::size_t j = 0;
        while (j < c.dim && sgn(l[j]) == 0) ++j;
        lead.push_back(j);
    }
    std::set<QVec, decltype(&lex_less)> seen(&lex_less);
    QMat rays;
    for (const QVec& r0 : c.rays) {
        QVec r = r0;
        for (std::size_t k = 0; k < out.lines.size(); ++k) {
            Rat f = r[lead[k]] / out.lines[k][lead[k]];
            if (sgn(f) != 0) r = sub(r, scale(f, out.lines[k]));
        }
        r = primitive(r);
        if (is_zero(r)) continue;
        if (seen.insert(r).second) rays.push_back(r);
    }
    std::sort(rays.begin(), rays.end(), lex_less);
    out.rays = std::move(rays);
    return out;
}

bool contains(const HCone& c, const QVec& y) {
    if (y.size() != c.dim) throw DimensionError("contains: dimension mismatch");
    for (const QVec& r : c.ineq)
        if (sgn(dot(r, y)) > 0) return false;
    for (const QVec& r : c.eq)
        if (sgn(dot(r, y)) != 0) return false;
    return true;
}

std::vector<std::size_t> active_rows(const HCone& c, const QVec& y) {
    std::vector<std::size_t> act;
    for (std::size_t j = 0; j < c.ineq.size(); ++j)
        if (sgn(dot(c.ineq[j], y)) == 0) act.push_back(j);
    return act;
}

namespace {

struct DDRay {
    QVec v;
    std::vector<char> act; // activity over processed inequality rows
};

struct DDState {
    std::size_t dim = 0;
    QMat lines;
    std::vector<DDRay> rays;
    QMat processed; // inequality rows inserted so far
    QMat enforced;  // equality rows (active at every ray)

    bool adjacent(const DDRay& p, const DDRay& n) const {
        long need = static_cast<long>(dim) - static_cast<long>(lines.size()) - 2;
        if (need < 0) return false;
        QMat rows = enforced;
        for (std::size_t i = 0; i < processed.size(); ++i)
            if (p.act[i] && n.act[i]) rows.push_back(processed[i]);
        if (static_cast<long>(rows.size()) < need) return false;
        return static_cast<long>(rank(rows)) == need;
    }

    void insert(const QVec& a, bool is_eq) {
        // a line not orthogonal to `a` absorbs the constraint
        std::size_t li = lines.size();
        for (std::size_t i = 0; i < lines.size(); ++i)
            if (sgn(dot(a, lines[i])) != 0) {
                li = i;
                break;
            }
        if (li < lines.size()) {
            QVec lstar = lines[li];
            Rat sstar = dot(a, lstar);
            QMat nl;
            for (std::size_t i = 0; i < lines.size(); ++i) {
                if (i == li) continue;
                Rat f = dot(a, lines[i]) / sstar;
                nl.push_back(primitive_signless(sub(lines[i], scale(f, lstar))));
            }
            lines = std::move(nl);
            for (DDRay& r : rays) {
                Rat f = dot(a, r.v) / sstar;
                if (sgn(f) != 0) r.v = sub(r.v, scale(f, lstar));
                r.v = primitive(r.v);
            }
            if (is_eq) {
                enforced.push_back(a);
            } else {
                for (DDRay& r : rays) r.act.push_back(1);
                DDRay r0;
                r0.v = sgn(sstar) < 0 ? lstar : neg(lstar);
                r0.act.assign(processed.size(), 1);
                r0.act.push_back(0);
                processed.push_back(a);
                rays.push_back(std::move(r0));
            }
            return;
        }
        // all lines orthogonal: partition rays by sign of <a, r>
        std::vector<std::size_t> pos, negs, zero;
        std::vector<Rat> val(rays.size());
        for (std::size_t i = 0; i < rays.size(); ++i) {
            val[i] = dot(a, rays[i].v);
            int s = sgn(val[i]);
            if (s > 0)
                pos.push_back(i);
            else if (s < 0)
                negs.push_back(i);
            else
                zero.push_back(i);
        }
        std::vector<DDRay> combined;
        for (std::size_t pi : pos)
            for (std::size_t ni : negs) {
                if (!adjacent(rays[pi], rays[ni])) continue;
                DDRay w;
                w.v = primitive(sub(scale(val[pi], rays[ni].v), scale(val[ni], rays[pi].v)));
                w.act.resize(processed.size());
                for (std::size_t i = 0; i < processed.size(); ++i)
                    w.act[i] = rays[pi].act[i] && rays[ni].act[i];
                combined.push_back(std::move(w));
            }
        std::vector<DDRay> next;
        for (std::size_t zi : zero) next.push_back(std::move(rays[zi]));
        if (!is_eq)
            for (std::size_t ni : negs) next.push_back(std::move(rays[ni]));
        for (DDRay& w : combined) next.push_back(std::move(w));
        if (is_eq) {
            enforced.push_back(a);
            rays = std::move(next);
        } else {
            for (DDRay& r : next) r.act.push_back(sgn(dot(a, r.v)) == 0 ? 1 : 0);
            processed.push_back(a);
            rays = std::move(next);
        }
    }
};

} // namespace

VCone dd_h_to_v(const HCone& c0) {
    HCone c = canonical(c0);
    DDState st;
    st.dim = c.dim;
    st.lines = identity(c.dim);
    for (const QVec& b : c.eq) st.insert(b, true);
    for (const QVec& a : c.ineq) st.insert(a, false);
    VCone v;
    v.dim = c.dim;
    for (DDRay& r : st.rays) v.rays.push_back(std::move(r.v));
    v.lines = st.lines;
    return canonical(v);
}

VCone polar_v(const HCone& c) {
    HCone cc = canonical(c);
    return canonical(VCone{cc.dim, cc.ineq, cc.eq});
}

HCone polar_h(const VCone& c) {
    VCone cc = canonical(c);
    return canonical(HCone{cc.dim, cc.rays, cc.lines});
}

HCone dd_v_to_h(const VCone& c) {
    // polar twice: the polar of a V-cone is immediately an H-cone
    return polar_h(dd_h_to_v(polar_h(c)));
}

HCone polar(const HCone& c) { return dd_v_to_h(polar_v(c)); }

bool is_trivial(const HCone& c) {
    VCone v = dd_h_to_v(c);
    return v.rays.empty() && v.lines.empty();
}

bool is_trivial(const VCone& c) {
    VCone v = canonical(c);
    return v.rays.empty() && v.lines.empty();
}

std::size_t cone_dim(const VCone& c) {
    QMat m = c.rays;
    for (const QVec& l : c.lines) m.push_back(l);
    return rank(m);
}

std::vector<Face> faces(const HCone& c0, std::size_t cap) {
    HCone c = canonical(c0);
    const std::size_t n = c.ineq.size();
    auto closure = [&](const std::set<std::size_t>& s) {
        HCone f;
        f.dim = c.dim;
        f.eq = c.eq;
        for (std::size_t j : s) f.eq.push_back(c.ineq[j]);
        for (std::size_t j = 0; j < n; ++j)
            if (!s.count(j)) f.ineq.push_back(c.ineq[j]);
        VCone v = dd_h_to_v(f);
        std::set<std::size_t> implied;
        for (std::size_t j = 0; j < n; ++j) {
            bool flat = true;
            for (const QVec& r : v.rays)
                if (sgn(dot(c.ineq[j], r)) != 0) {
                    flat = false;
                    break;
                }
            if (flat)
                for (const QVec& l : v.lines)
                    if (sgn(dot(c.ineq[j], l)) != 0) {
                        flat = false;
                        break;
                    }
            if (flat) implied.insert(j);
        }
        return implied;
    };
    std::map<std::set<std::size_t>, bool> seen; // set -> expanded?
    std::vector<std::set<std::size_t>> queue{closure({})};
    seen[queue[0]] = false;
    std::vector<Face> out;
    while (!queue.empty()) {
        std::set<std::size_t> s = queue.back();
        queue.pop_back();
        Face f;
        f.active.assign(s.begin(), s.end());
        f.as_cone.dim = c.dim;
        f.as_cone.eq = c.eq;
        for (std::size_t j : s) f.as_cone.eq.push_back(c.ineq[j]);
        for (std::size_t j = 0; j < n; ++j)
            if (!s.count(j)) f.as_cone.ineq.push_back(c.ineq[j]);
        out.push_back(std::move(f));
        if (out.size() > cap) throw CapacityError("face budget exceeded");
        for (std::size_t j = 0; j < n; ++j) {
            if (s.count(j)) continue;
            std::set<std::size_t> t = s;
            t.insert(j);
            std::set<std::size_t> ct = closure(t);
            if (seen.emplace(ct, false).second) queue.push_back(ct);
        }
    }
    return out;
}

QVec relint_point(const VCone& c0, unsigned salt) {
    VCone c = canonical(c0);
    if (c.rays.empty() && c.lines.empty()) throw Error("relint point of the trivial cone");
    QVec v = zeros(c.dim);
    const QMat& gens = c.rays.empty() ? c.lines : c.rays;
    for (std::size_t i = 0; i < gens.size(); ++i)
        v = add(v, scale(Rat(1 + static_cast<long>(salt) * static_cast<long>(i)), gens[i]));
    return primitive(v);
}

QVec relint_point(const HCone& c, unsigned salt) { return relint_point(dd_h_to_v(c), salt); }

VCone linear_image(const QMat& m, const VCone& c) {
    for (const QVec& row : m)
        if (row.size() != c.dim) throw DimensionError("linear_image: shape mismatch");
    VCone out;
    out.dim = m.size();
    for (const QVec& r : c.rays) out.rays.push_back(mat_vec(m, r));
    for (const QVec& l : c.lines) out.lines.push_back(mat_vec(m, l));
    return canonical(out);
}

HCone linear_preimage(const QMat& m, std::size_t n, const HCone& c) {
    if (m.size() != c.dim) throw DimensionError("linear_preimage: shape mismatch");
    HCone out;
    out.dim = n;
    if (m.empty()) return canonical(out); // map into R^0: preimage is everything
    for (const QVec& row : c.ineq) out.ineq.push_back(vec_mat(row, m));
    for (const QVec& row : c.eq) out.eq.push_back(vec_mat(row, m));
    return canonical(out);
}

HCone intersect(const HCone& a, const HCone& b) {
    if (a.dim != b.dim) throw DimensionError("intersect: dimension mismatch");
    HCone out = a;
    out.ineq.insert(out.ineq.end(), b.ineq.begin(), b.ineq.end());
    out.eq.insert(out.eq.end(), b.eq.begin(), b.eq.end());
    return canonical(out);
}

HCone product(const HCone& a, const HCone& b) {
    HCone out;
    out.dim = a.dim + b.dim;
    auto pad_front = [&](const QVec& r) {
        QVec v = zeros(a.dim);
        v.insert(v.end(), r.begin(), r.end());
        return v;
    };
    auto pad_back = [&](const QVec& r) {
        QVec v = r;
        QVec z = zeros(b.dim);
        v.insert(v.end(), z.begin(), z.end());
        return v;
    };
    for (const QVec& r : a.ineq) out.ineq.push_back(pad_back(r));
    for (const QVec& r : a.eq) out.eq.push_back(pad_back(r));
    for (const QVec& r : b.ineq) out.ineq.push_back(pad_front(r));
    for (const QVec& r : b.eq) out.eq.push_back(pad_front(r));
    return out;
}

bool subset(const HCone& a, const HCone& b) {
    VCone v = dd_h_to_v(a);
    for (const QVec& r : v.rays)
        if (!contains(b, r)) return false;
    for (const QVec& l : v.lines)
        if (!contains(b, l) || !contains(b, neg(l))) return false;
    return true;
}

bool same_cone(const HCone& a, const HCone& b) { return cone_key(a) == cone_key(b); }

bool same_cone(const VCone& a, const VCone& b) { return cone_key(a) == cone_key(b); }

std::string cone_key(const VCone& c0) {
    VCone c = canonical(c0);
    std::ostringstream os;
    os << c.dim << "|r";
    for (const QVec& r : c.rays) {
        os << "(";
        for (const Rat& x : r) os << rat_str(x) << ",";
        os << ")";
    }
    os << "|l";
    for (const QVec& l : c.lines) {
        os << "(";
        for (const Rat& x : l) os << rat_str(x) << ",";
        os << ")";
    }
    return os.str();
}

std::string cone_key(const HCone& c) { return cone_key(dd_h_to_v(c)); }

} // namespace conecq
