#include "conecq/sets.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace conecq {

std::size_t factor_dim(const Factor& f) {
    return std::visit(
        [](const auto& v) -> std::size_t {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, ZeroFactor>)
                return v.dim;
            else if constexpr (std::is_same_v<T, OrthantFactor>)
                return v.dim;
            else if constexpr (std::is_same_v<T, UnionFactor>)
                return v.dim;
            else
                return 2;
        },
        f);
}

std::size_t StructuredSet::dim() const {
    std::size_t d = 0;
    for (const Factor& f : factors) d += factor_dim(f);
    return d;
}

namespace {

QVec slice(const QVec& y, std::size_t off, std::size_t len) {
    return QVec(y.begin() + static_cast<long>(off), y.begin() + static_cast<long>(off + len));
}

} // namespace

bool member(const StructuredSet& s, const QVec& y) {
    try {
        locate(s, y);
        return true;
    } catch (const InfeasibleError&) {
        return false;
    }
}

SetPoint locate(const StructuredSet& s, const QVec& y) {
    if (y.size() != s.dim()) throw DimensionError("locate: point has wrong dimension");
    SetPoint p;
    p.y = y;
    std::size_t off = 0;
    for (std::size_t fi = 0; fi < s.factors.size(); ++fi) {
        const Factor& f = s.factors[fi];
        std::size_t d = factor_dim(f);
        QVec v = slice(y, off, d);
        FactorCert cert;
        if (std::holds_alternative<ZeroFactor>(f)) {
            for (std::size_t i = 0; i < d; ++i) {
                if (sgn(v[i]) != 0) throw InfeasibleError("zero factor violated");
                cert.tight.push_back(i);
            }
        } else if (const auto* o = std::get_if<OrthantFactor>(&f)) {
            for (std::size_t i = 0; i < d; ++i) {
                int sg = sgn(v[i]) * o->sign;
                if (sg < 0) throw InfeasibleError("orthant factor violated");
                if (sg == 0) cert.tight.push_back(i);
            }
        } else if (const auto* u = std::get_if<UnionFactor>(&f)) {
            for (std::size_t pi = 0; pi < u->pieces.size(); ++pi) {
                const Polyhedron& poly = u->pieces[pi];
                bool in = true;
                std::vector<std::size_t> act;
                for (std::size_t j = 0; j < poly.rows.size(); ++j) {
                    int c = cmp(dot(poly.rows[j], v), poly.rhs[j]);
                    if (c > 0) {
                        in = false;
                        break;
                    }
                    if (c == 0) act.push_back(j);
                }
                if (in) {
                    cert.pieces.push_back(pi);
                    cert.active.push_back(std::move(act));
                }
            }
            if (cert.pieces.empty()) throw InfeasibleError("point in no union piece");
        } else {
            const Rat& a = v[0];
            const Rat& b = v[1];
            if (sgn(a) < 0 || sgn(b) < 0 || sgn(a * b) != 0)
                throw InfeasibleError("complementarity violated");
            if (sgn(a) == 0) cert.tight.push_back(0);
            if (sgn(b) == 0) cert.tight.push_back(1);
        }
        p.certs.push_back(std::move(cert));
        off += d;
    }
    return p;
}

bool is_void(const ConeUnion& u) { return u.pieces.empty(); }

bool is_trivial_union(const ConeUnion& u) {
    if (u.pieces.empty()) return false;
    for (const ConePiece& p : u.pieces)
        if (!is_trivial(p.cone)) return false;
    return true;
}

ConeUnion canonical(const ConeUnion& u) {
    struct Entry {
        std::string key;
        HCone cone;
        std::string tag;
    };
    std::vector<Entry> entries;
    for (const ConePiece& p : u.pieces) {
        HCone c = canonical(p.cone);
        std::string k = cone_key(c);
        bool dup = false;
        for (const Entry& e : entries)
            if (e.key == k) {
                dup = true;
                break;
            }
        if (!dup) entries.push_back({std::move(k), std::move(c), p.tag});
    }
    // drop pieces contained in another piece
    std::vector<bool> drop(entries.size(), false);
    for (std::size_t i = 0; i < entries.size(); ++i)
        for (std::size_t j = 0; j < entries.size(); ++j) {
            if (i == j || drop[i] || drop[j]) continue;
            if (subset(entries[i].cone, entries[j].cone)) {
                drop[i] = true;
                break;
            }
        }
    ConeUnion out;
    out.dim = u.dim;
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < entries.size(); ++i)
        if (!drop[i]) order.push_back(i);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return entries[a].key < entries[b].key; });
    for (std::size_t i : order) out.pieces.push_back({entries[i].cone, entries[i].tag});
    return out;
}

bool member(const ConeUnion& u, const QVec& y) {
    for (const ConePiece& p : u.pieces)
        if (contains(p.cone, y)) return true;
    return false;
}

bool same_union(const ConeUnion& a, const ConeUnion& b) {
    ConeUnion ca = canonical(a);
    ConeUnion cb = canonical(b);
    if (ca.pieces.size() != cb.pieces.size()) return false;
    for (std::size_t i = 0; i < ca.pieces.size(); ++i)
        if (cone_key(ca.pieces[i].cone) != cone_key(cb.pieces[i].cone)) return false;
    return true;
}

std::vector<VCone> arrangement_strata(const std::vector<HCone>& pieces, std::size_t face_cap) {
    if (pieces.empty()) return {};
    std::size_t dim = pieces[0].dim;
    // hyperplane normals, orientation-free, deduped, in a fixed order
    std::map<std::string, QVec> hmap;
    for (const HCone& p : pieces) {
        auto note = [&](const QVec& r) {
            QVec h = primitive_signless(r);
            if (is_zero(h)) return;
            std::ostringstream os;
            for (const Rat& x : h) os << rat_str(x) << ",";
            hmap.emplace(os.str(), h);
        };
        for (const QVec& r : p.ineq) note(r);
        for (const QVec& r : p.eq) note(r);
    }
    QMat hyperplanes;
    for (auto& [k, h] : hmap) hyperplanes.push_back(h);

    std::map<std::string, VCone> strata;
    std::size_t visited = 0;
    for (const HCone& piece : pieces) {
        std::vector<HCone> cells{canonical(piece)};
        for (const QVec& h : hyperplanes) {
            std::vector<HCone> next;
            std::map<std::string, bool> seen;
            for (const HCone& cell : cells) {
                for (int side = 0; side < 2; ++side) {
                    HCone c = cell;
                    c.ineq.push_back(side == 0 ? h : neg(h));
                    c = canonical(c);
                    VCone v = dd_h_to_v(c);
                    if (v.rays.empty() && v.lines.empty()) continue;
                    if (seen.emplace(cone_key(v), true).second) next.push_back(std::move(c));
                    if (++visited > face_cap) throw CapacityError("stratum budget exceeded");
                }
            }
            cells = std::move(next);
        }
        for (const HCone& cell : cells) {
            for (const Face& f : faces(cell, face_cap)) {
                VCone v = dd_h_to_v(f.as_cone);
                if (v.rays.empty() && v.lines.empty()) continue;
                strata.emplace(cone_key(v), std::move(v));
                if (++visited > face_cap) throw CapacityError("stratum budget exceeded");
            }
        }
    }
    std::vector<VCone> out;
    out.reserve(strata.size());
    for (auto& [k, v] : strata) out.push_back(std::move(v));
    return out;
}

std::vector<HCone> union_limiting_normal(const std::vector<HCone>& pieces, const QVec& point,
                                         std::size_t face_cap) {
    std::vector<HCone> local;
    for (const HCone& p : pieces) {
        if (!contains(p, point)) continue;
        HCone l;
        l.dim = p.dim;
        l.eq = p.eq;
        for (std::size_t j : active_rows(p, point)) l.ineq.push_back(p.ineq[j]);
        local.push_back(canonical(l));
    }
    if (local.empty()) return {};

    std::vector<QVec> reps{zeros(point.size())};
    for (const VCone& f : arrangement_strata(local, face_cap)) reps.push_back(relint_point(f));

    std::map<std::string, HCone> out;
    for (const QVec& v : reps) {
        // regular normal cone of the union at a point displaced along v:
        // intersection over the pieces v is tangent to
        HCone acc = full_cone(point.size());
        bool any = false;
        for (const HCone& l : local) {
            if (!contains(l, v)) continue;
            any = true;
            VCone hat;
            hat.dim = l.dim;
            for (std::size_t j : active_rows(l, v)) hat.rays.push_back(l.ineq[j]);
            hat.lines = l.eq;
            acc = intersect(acc, dd_v_to_h(hat));
        }
        if (!any) continue; // unreachable: v comes from a stratum of some piece
        out.emplace(cone_key(acc), std::move(acc));
    }
    // subsumption filter
    std::vector<HCone> list;
    for (auto& [k, c] : out) list.push_back(std::move(c));
    std::vector<bool> drop(list.size(), false);
    for (std::size_t i = 0; i < list.size(); ++i)
        for (std::size_t j = 0; j < list.size(); ++j) {
            if (i == j || drop[i] || drop[j]) continue;
            if (subset(list[i], list[j])) {
                drop[i] = true;
                break;
            }
        }
    std::vector<HCone> result;
    for (std::size_t i = 0; i < list.size(); ++i)
        if (!drop[i]) result.push_back(std::move(list[i]));
    return result;
}

namespace {

// Per-factor cone pieces; an empty optional marks the empty set (the
// direction was not tangent).
using FactorPieces = std::optional<std::vector<ConePiece>>;

QVec orthant_row(std::size_t d, std::size_t i, int sign) {
    QVec r = zeros(d);
    r[i] = -sign; // sign * v_i >= 0  <=>  (-sign) * v_i <= 0
    return r;
}

std::vector<ConePiece> tangent_pieces(const Factor& f, const FactorCert& cert, const QVec& v,
                                      const std::string& tag) {
    std::size_t d = factor_dim(f);
    if (std::holds_alternative<ZeroFactor>(f)) return {{zero_cone(d), tag}};
    if (const auto* o = std::get_if<OrthantFactor>(&f)) {
        HCone t;
        t.dim = d;
        for (std::size_t i : cert.tight) t.ineq.push_back(orthant_row(d, i, o->sign));
        return {{t, tag}};
    }
    if (const auto* u = std::get_if<UnionFactor>(&f)) {
        std::vector<ConePiece> out;
        for (std::size_t k = 0; k < cert.pieces.size(); ++k) {
            const Polyhedron& poly = u->pieces[cert.pieces[k]];
            HCone t;
            t.dim = d;
            for (std::size_t j : cert.active[k]) t.ineq.push_back(poly.rows[j]);
            out.push_back({t, tag + ".p" + std::to_string(cert.pieces[k])});
        }
        return out;
    }
    // complementarity
    const Rat& a = v[0];
    const Rat& b = v[1];
    if (sgn(a) > 0) return {{HCone{2, {}, {QVec{Rat(0), Rat(1)}}}, tag}};
    if (sgn(b) > 0) return {{HCone{2, {}, {QVec{Rat(1), Rat(0)}}}, tag}};
    return {{HCone{2, {QVec{Rat(-1), Rat(0)}}, {QVec{Rat(0), Rat(1)}}}, tag + ".phi"},
            {HCone{2, {QVec{Rat(0), Rat(-1)}}, {QVec{Rat(1), Rat(0)}}}, tag + ".psi"}};
}

HCone regular_normal_piece(const Factor& f, const FactorCert& cert, const QVec& v) {
    std::size_t d = factor_dim(f);
    if (std::holds_alternative<ZeroFactor>(f)) return full_cone(d);
    if (const auto* o = std::get_if<OrthantFactor>(&f)) {
        HCone n;
        n.dim = d;
        std::vector<bool> tight(d, false);
        for (std::size_t i : cert.tight) tight[i] = true;
        for (std::size_t i = 0; i < d; ++i) {
            QVec r = zeros(d);
            if (tight[i]) {
                r[i] = o->sign; // sign * z_i <= 0
                n.ineq.push_back(r);
            } else {
                r[i] = 1;
                n.eq.push_back(r);
            }
        }
        return n;
    }
    if (const auto* u = std::get_if<UnionFactor>(&f)) {
        HCone acc = full_cone(d);
        for (std::size_t k = 0; k < cert.pieces.size(); ++k) {
            const Polyhedron& poly = u->pieces[cert.pieces[k]];
            VCone hat;
            hat.dim = d;
            for (std::size_t j : cert.active[k]) hat.rays.push_back(poly.rows[j]);
            acc = intersect(acc, dd_v_to_h(hat));
        }
        return acc;
    }
    const Rat& a = v[0];
    const Rat& b = v[1];
    if (sgn(a) > 0) return HCone{2, {}, {QVec{Rat(1), Rat(0)}}};       // {0} x R
    if (sgn(b) > 0) return HCone{2, {}, {QVec{Rat(0), Rat(1)}}};       // R x {0}
    return HCone{2, {QVec{Rat(1), Rat(0)}, QVec{Rat(0), Rat(1)}}, {}}; // R- x R-
}

std::vector<HCone> compl_origin_normal_pieces() {
    return {HCone{2, {}, {QVec{Rat(1), Rat(0)}}},                        // {0} x R
            HCone{2, {}, {QVec{Rat(0), Rat(1)}}},                        // R x {0}
            HCone{2, {QVec{Rat(1), Rat(0)}, QVec{Rat(0), Rat(1)}}, {}}}; // R- x R-
}

FactorPieces limiting_pieces(const Factor& f, const FactorCert& cert, const QVec& v,
                             const std::string& tag, std::size_t face_cap) {
    std::size_t d = factor_dim(f);
    if (std::holds_alternative<ZeroFactor>(f) || std::holds_alternative<OrthantFactor>(f))
        return std::vector<ConePiece>{{regular_normal_piece(f, cert, v), tag}};
    if (std::get_if<UnionFactor>(&f)) {
        std::vector<HCone> tp;
        for (const ConePiece& p : tangent_pieces(f, cert, v, tag)) tp.push_back(p.cone);
        std::vector<ConePiece> out;
        std::size_t k = 0;
        for (HCone& n : union_limiting_normal(tp, zeros(d), face_cap))
            out.push_back({std::move(n), tag + ".s" + std::to_string(k++)});
        return out;
    }
    const Rat& a = v[0];
    const Rat& b = v[1];
    if (sgn(a) > 0 || sgn(b) > 0)
        return std::vector<ConePiece>{{regular_normal_piece(f, cert, v), tag}};
    std::vector<ConePiece> out;
    std::size_t k = 0;
    for (HCone& n : compl_origin_normal_pieces()) out.push_back({std::move(n), tag + ".s" + std::to_string(k++)});
    return out;
}

FactorPieces directional_pieces(const Factor& f, const FactorCert& cert, const QVec& v,
                                const QVec& dir, const std::string& tag, std::size_t face_cap) {
    std::size_t d = factor_dim(f);
    if (std::holds_alternative<ZeroFactor>(f)) {
        if (!is_zero(dir)) return std::nullopt;
        return std::vector<ConePiece>{{full_cone(d), tag}};
    }
    if (const auto* o = std::get_if<OrthantFactor>(&f)) {
        std::vector<bool> tight(d, false);
        for (std::size_t i : cert.tight) tight[i] = true;
        HCone n;
        n.dim = d;
        for (std::size_t i = 0; i < d; ++i) {
            int ds = sgn(dir[i]) * o->sign;
            if (tight[i] && ds < 0) return std::nullopt; // not tangent
            QVec r = zeros(d);
            if (tight[i] && ds == 0) {
                r[i] = o->sign;
                n.ineq.push_back(r);
            } else {
                r[i] = 1;
                n.eq.push_back(r);
            }
        }
        return std::vector<ConePiece>{{n, tag}};
    }
    if (std::get_if<UnionFactor>(&f)) {
        std::vector<HCone> tp;
        for (const ConePiece& p : tangent_pieces(f, cert, v, tag)) tp.push_back(p.cone);
        std::vector<HCone> normals = union_limiting_normal(tp, dir, face_cap);
        if (normals.empty()) return std::nullopt;
        std::vector<ConePiece> out;
        std::size_t k = 0;
        for (HCone& n : normals) out.push_back({std::move(n), tag + ".s" + std::to_string(k++)});
        return out;
    }
    // complementarity: closed-form directional table
    const Rat& a = v[0];
    const Rat& b = v[1];
    if (sgn(a) > 0) { // tangent is {d2 = 0}
        if (sgn(dir[1]) != 0) return std::nullopt;
        return std::vector<ConePiece>{{HCone{2, {}, {QVec{Rat(1), Rat(0)}}}, tag}};
    }
    if (sgn(b) > 0) {
        if (sgn(dir[0]) != 0) return std::nullopt;
        return std::vector<ConePiece>{{HCone{2, {}, {QVec{Rat(0), Rat(1)}}}, tag}};
    }
    // at the origin the direction must lie in the set itself
    if (sgn(dir[0]) < 0 || sgn(dir[1]) < 0 || sgn(dir[0] * dir[1]) != 0) return std::nullopt;
    if (sgn(dir[0]) > 0)
        return std::vector<ConePiece>{{HCone{2, {}, {QVec{Rat(1), Rat(0)}}}, tag}};
    if (sgn(dir[1]) > 0)
        return std::vector<ConePiece>{{HCone{2, {}, {QVec{Rat(0), Rat(1)}}}, tag}};
    std::vector<ConePiece> out;
    std::size_t k = 0;
    for (HCone& n : compl_origin_normal_pieces()) out.push_back({std::move(n), tag + ".s" + std::to_string(k++)});
    return out;
}

ConeUnion product_union(const std::vector<std::vector<ConePiece>>& parts, std::size_t total_dim,
                        std::size_t cap) {
    std::vector<ConePiece> acc{{full_cone(0), ""}};
    for (const auto& factor_pieces : parts) {
        std::vector<ConePiece> next;
        for (const ConePiece& left : acc)
            for (const ConePiece& right : factor_pieces) {
                std::string tag = left.tag.empty() ? right.tag
                                  : right.tag.empty() ? left.tag
                                                      : left.tag + "*" + right.tag;
                next.push_back({product(left.cone, right.cone), tag});
                if (next.size() > cap) throw CapacityError("union piece budget exceeded");
            }
        acc = std::move(next);
    }
    ConeUnion u;
    u.dim = total_dim;
    u.pieces = std::move(acc);
    return canonical(u);
}

} // namespace

ConeUnion tangent_cone(const StructuredSet& s, const SetPoint& p) {
    std::vector<std::vector<ConePiece>> parts;
    std::size_t off = 0;
    for (std::size_t fi = 0; fi < s.factors.size(); ++fi) {
        std::size_t d = factor_dim(s.factors[fi]);
        parts.push_back(tangent_pieces(s.factors[fi], p.certs[fi], slice(p.y, off, d),
                                       "f" + std::to_string(fi)));
        off += d;
    }
    return product_union(parts, s.dim(), 100000);
}

HCone regular_normal_cone(const StructuredSet& s, const SetPoint& p) {
    HCone acc = full_cone(0);
    std::size_t off = 0;
    for (std::size_t fi = 0; fi < s.factors.size(); ++fi) {
        std::size_t d = factor_dim(s.factors[fi]);
        acc = product(acc, regular_normal_piece(s.factors[fi], p.certs[fi], slice(p.y, off, d)));
        off += d;
    }
    return canonical(acc);
}

ConeUnion limiting_normal_cone(const StructuredSet& s, const SetPoint& p, std::size_t face_cap) {
    std::vector<std::vector<ConePiece>> parts;
    std::size_t off = 0;
    for (std::size_t fi = 0; fi < s.factors.size(); ++fi) {
        std::size_t d = factor_dim(s.factors[fi]);
        FactorPieces fp = limiting_pieces(s.factors[fi], p.certs[fi], slice(p.y, off, d),
                                          "f" + std::to_string(fi), face_cap);
        parts.push_back(*fp);
        off += d;
    }
    return product_union(parts, s.dim(), face_cap);
}

ConeUnion directional_normal_cone(const StructuredSet& s, const SetPoint& p, const QVec& d,
                                  std::size_t face_cap) {
    if (d.size() != s.dim()) throw DimensionError("directional_normal_cone: bad direction");
    std::vector<std::vector<ConePiece>> parts;
    std::size_t off = 0;
    for (std::size_t fi = 0; fi < s.factors.size(); ++fi) {
        std::size_t fd = factor_dim(s.factors[fi]);
        FactorPieces fp = directional_pieces(s.factors[fi], p.certs[fi], slice(p.y, off, fd),
                                             slice(d, off, fd), "f" + std::to_string(fi), face_cap);
        if (!fp) return ConeUnion{s.dim(), {}}; // direction not tangent: empty
        parts.push_back(std::move(*fp));
        off += fd;
    }
    return product_union(parts, s.dim(), face_cap);
}

QVec project_polyhedron(const QMat& rows, const QVec& rhs, const QVec& y) {
    const std::size_t n = y.size();
    const std::size_t m = rows.size();
    auto feasible = [&](const QVec& x) {
        for (std::size_t j = 0; j < m; ++j)
            if (cmp(dot(rows[j], x), rhs[j]) > 0) return false;
        return true;
    };
    if (feasible(y)) return y;
    if (m > 20) throw CapacityError("polyhedron projection: too many rows");
    // enumerate candidate active sets; the projection is unique, so the first
    // KKT-consistent candidate is the answer
    for (std::size_t size = 1; size <= std::min(n, m); ++size) {
        std::vector<std::size_t> idx(size);
        // iterate over subsets of this cardinality in lexicographic order
        std::function<std::optional<QVec>(std::size_t, std::size_t)> rec =
            [&](std::size_t start, std::size_t k) -> std::optional<QVec> {
            if (k == size) {
                QMat b;
                QVec c;
                for (std::size_t j : idx) {
                    b.push_back(rows[j]);
                    c.push_back(rhs[j]);
                }
                if (rank(b) < size) return std::nullopt;
                QMat gram(size, zeros(size));
                for (std::size_t i = 0; i < size; ++i)
                    for (std::size_t j = 0; j < size; ++j) gram[i][j] = dot(b[i], b[j]);
                QVec rhs2(size);
                for (std::size_t i = 0; i < size; ++i) rhs2[i] = dot(b[i], y) - c[i];
                auto mu = solve(gram, rhs2, size);
                if (!mu) return std::nullopt;
                for (const Rat& m2 : *mu)
                    if (sgn(m2) < 0) return std::nullopt;
                QVec x = y;
                for (std::size_t i = 0; i < size; ++i) x = sub(x, scale((*mu)[i], b[i]));
                if (!feasible(x)) return std::nullopt;
                return x;
            }
            for (std::size_t j = start; j < m; ++j) {
                idx[k] = j;
                if (auto r = rec(j + 1, k + 1)) return r;
            }
            return std::nullopt;
        };
        if (auto r = rec(0, 0)) return *r;
    }
    throw InfeasibleError("projection onto empty polyhedron");
}

QVec project_cone(const HCone& c, const QVec& y) {
    QMat rows = c.ineq;
    QVec rhs(rows.size(), Rat(0));
    for (const QVec& e : c.eq) {
        rows.push_back(e);
        rhs.push_back(Rat(0));
        rows.push_back(neg(e));
        rhs.push_back(Rat(0));
    }
    return project_polyhedron(rows, rhs, y);
}

QVec project_exact(const StructuredSet& s, const QVec& y,
                   const std::vector<std::optional<std::size_t>>& selector) {
    if (y.size() != s.dim()) throw DimensionError("project_exact: bad point");
    QVec out;
    std::size_t off = 0;
    for (std::size_t fi = 0; fi < s.factors.size(); ++fi) {
        const Factor& f = s.factors[fi];
        std::size_t d = factor_dim(f);
        QVec v = slice(y, off, d);
        std::optional<std::size_t> pick;
        if (fi < selector.size()) pick = selector[fi];
        QVec proj;
        if (std::holds_alternative<ZeroFactor>(f)) {
            proj = zeros(d);
        } else if (const auto* o = std::get_if<OrthantFactor>(&f)) {
            proj = v;
            for (Rat& x : proj)
                if (sgn(x) * o->sign < 0) x = 0;
        } else if (const auto* u = std::get_if<UnionFactor>(&f)) {
            std::optional<QVec> best;
            Rat best_d2;
            for (std::size_t pi = 0; pi < u->pieces.size(); ++pi) {
                if (pick && *pick != pi) continue;
                QVec cand;
                try {
                    cand = project_polyhedron(u->pieces[pi].rows, u->pieces[pi].rhs, v);
                } catch (const InfeasibleError&) {
                    continue; // empty piece
                }
                Rat d2 = norm2(sub(v, cand));
                if (!best || cmp(d2, best_d2) < 0) {
                    best = cand;
                    best_d2 = d2;
                }
            }
            if (!best) throw InfeasibleError("projection onto empty union factor");
            proj = *best;
        } else {
            // complementarity: compare the two axis projections
            QVec c1{sgn(v[0]) > 0 ? v[0] : Rat(0), Rat(0)};
            QVec c2{Rat(0), sgn(v[1]) > 0 ? v[1] : Rat(0)};
            if (pick)
                proj = (*pick == 0) ? c1 : c2;
            else
                proj = cmp(norm2(sub(v, c1)), norm2(sub(v, c2))) <= 0 ? c1 : c2;
        }
        out.insert(out.end(), proj.begin(), proj.end());
        off += d;
    }
    return out;
}

} // namespace conecq
