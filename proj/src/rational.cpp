#include "conecq/rational.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace conecq {

Rat rat(long num, long den) {
    if (den == 0) throw Error("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

// mantissa [sign]digits[.digits], exponent applied as a power of ten
Rat parse_decimal(const std::string& text) {
    std::string s = text;
    long exp10 = 0;
    auto epos = s.find_first_of("eE");
    if (epos != std::string::npos) {
        std::string es = s.substr(epos + 1);
        s = s.substr(0, epos);
        if (es.empty()) throw ParseError("bad exponent in '" + text + "'");
        try {
            exp10 = std::stol(es);
        } catch (const std::exception&) {
            throw ParseError("bad exponent in '" + text + "'");
        }
    }
    bool negative = false;
    if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
        negative = s[0] == '-';
        s = s.substr(1);
    }
    std::string digits = s;
    auto dpos = s.find('.');
    if (dpos != std::string::npos) {
        std::string frac = s.substr(dpos + 1);
        digits = s.substr(0, dpos) + frac;
        exp10 -= static_cast<long>(frac.size());
    }
    if (!all_digits(digits)) throw ParseError("cannot parse rational '" + text + "'");
    mpz_class num(digits, 10);
    mpz_class den(1);
    mpz_class ten(10);
    if (exp10 >= 0) {
        mpz_class p;
        mpz_pow_ui(p.get_mpz_t(), ten.get_mpz_t(), static_cast<unsigned long>(exp10));
        num *= p;
    } else {
        mpz_pow_ui(den.get_mpz_t(), ten.get_mpz_t(), static_cast<unsigned long>(-exp10));
    }
    Rat r(num, den);
    r.canonicalize();
    if (negative) r = -r;
    return r;
}

} // namespace

Rat parse_rat(const std::string& text) {
    if (text.empty()) throw ParseError("empty rational literal");
    if (text.find_first_of(".eE") != std::string::npos && text.find('/') == std::string::npos)
        return parse_decimal(text);
    try {
        Rat r(text, 10);
        if (r.get_den() == 0) throw ParseError("zero denominator in '" + text + "'");
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        throw ParseError("cannot parse rational '" + text + "'");
    }
}

std::string rat_str(const Rat& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

double to_double(const Rat& r) { return r.get_d(); }

Rat from_double(double x) {
    if (!std::isfinite(x)) throw ParseError("non-finite float in exact context");
    Rat r(x);
    r.canonicalize();
    return r;
}

bool is_zero(const QVec& v) {
    return std::all_of(v.begin(), v.end(), [](const Rat& r) { return sgn(r) == 0; });
}

Rat dot(const QVec& a, const QVec& b) {
    if (a.size() != b.size()) throw DimensionError("dot: size mismatch");
    Rat s(0);
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

QVec add(const QVec& a, const QVec& b) {
    if (a.size() != b.size()) throw DimensionError("add: size mismatch");
    QVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

QVec sub(const QVec& a, const QVec& b) {
    if (a.size() != b.size()) throw DimensionError("sub: size mismatch");
    QVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

QVec scale(const Rat& c, const QVec& v) {
    QVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = c * v[i];
    return r;
}

QVec neg(const QVec& v) { return scale(Rat(-1), v); }

Rat norm2(const QVec& v) {
    Rat s(0);
    for (const Rat& x : v) s += x * x;
    return s;
}

QVec zeros(std::size_t n) { return QVec(n, Rat(0)); }

QMat identity(std::size_t n) {
    QMat m(n, zeros(n));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

QVec unit(std::size_t n, std::size_t i) {
    QVec v = zeros(n);
    v.at(i) = 1;
    return v;
}

QVec mat_vec(const QMat& m, const QVec& v) {
    QVec r;
    r.reserve(m.size());
    for (const QVec& row : m) r.push_back(dot(row, v));
    return r;
}

QVec vec_mat(const QVec& v, const QMat& m) {
    if (m.empty()) throw DimensionError("vec_mat: empty matrix");
    if (v.size() != m.size()) throw DimensionError("vec_mat: size mismatch");
    QVec r = zeros(m[0].size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < r.size(); ++j) r[j] += v[i] * m[i][j];
    return r;
}

QMat mat_mul(const QMat& a, const QMat& b) {
    QMat r;
    r.reserve(a.size());
    for (const QVec& row : a) r.push_back(vec_mat(row, b));
    return r;
}

QMat transpose(const QMat& m, std::size_t cols) {
    QMat t(cols, zeros(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i].size() != cols) throw DimensionError("transpose: ragged matrix");
        for (std::size_t j = 0; j < cols; ++j) t[j][i] = m[i][j];
    }
    return t;
}

QVec primitive(const QVec& v) {
    if (is_zero(v)) return zeros(v.size());
    mpz_class den_lcm(1);
    for (const Rat& x : v)
        if (sgn(x) != 0) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), x.get_den().get_mpz_t());
    mpz_class g(0);
    std::vector<mpz_class> nums(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        nums[i] = v[i].get_num() * (den_lcm / v[i].get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), nums[i].get_mpz_t());
    }
    QVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = Rat(nums[i] / g);
    return r;
}

QVec primitive_signless(const QVec& v) {
    QVec r = primitive(v);
    for (const Rat& x : r) {
        if (sgn(x) > 0) return r;
        if (sgn(x) < 0) return neg(r);
    }
    return r;
}

int compare(const QVec& a, const QVec& b) {
    std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        int c = cmp(a[i], b[i]);
        if (c != 0) return c;
    }
    if (a.size() == b.size()) return 0;
    return a.size() < b.size() ? -1 : 1;
}

bool lex_less(const QVec& a, const QVec& b) { return compare(a, b) < 0; }

namespace {

// In-place forward elimination over the first `cols` columns; trailing
// columns (augmented right-hand sides) ride along in the row operations.
std::vector<std::size_t> eliminate(QMat& m, std::size_t cols) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
        std::size_t sel = row;
        while (sel < m.size() && sgn(m[sel][col]) == 0) ++sel;
        if (sel == m.size()) continue;
        std::swap(m[row], m[sel]);
        for (std::size_t r = row + 1; r < m.size(); ++r) {
            if (sgn(m[r][col]) == 0) continue;
            Rat f = m[r][col] / m[row][col];
            for (std::size_t c = col; c < m[r].size(); ++c) m[r][c] -= f * m[row][c];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

} // namespace

std::size_t rank(QMat m) {
    if (m.empty()) return 0;
    return eliminate(m, m[0].size()).size();
}

QMat rref(QMat m) {
    if (m.empty()) return {};
    std::size_t cols = m[0].size();
    std::vector<std::size_t> pivots = eliminate(m, cols);
    // back substitution
    for (std::size_t k = pivots.size(); k-- > 0;) {
        std::size_t col = pivots[k];
        Rat p = m[k][col];
        for (std::size_t c = 0; c < cols; ++c) m[k][c] /= p;
        for (std::size_t r = 0; r < k; ++r) {
            Rat f = m[r][col];
            if (sgn(f) == 0) continue;
            for (std::size_t c = 0; c < cols; ++c) m[r][c] -= f * m[k][c];
        }
    }
    m.resize(pivots.size());
    for (QVec& row : m) row = primitive_signless(row);
    return m;
}

QMat nullspace(const QMat& m, std::size_t cols) {
    QMat r = rref(m);
    std::vector<std::size_t> pivots;
    std::vector<bool> is_pivot(cols, false);
    for (const QVec& row : r) {
        std::size_t col = 0;
        while (col < cols && sgn(row[col]) == 0) ++col;
        pivots.push_back(col);
        is_pivot[col] = true;
    }
    QMat basis;
    for (std::size_t j = 0; j < cols; ++j) {
        if (is_pivot[j]) continue;
        QVec v = zeros(cols);
        v[j] = 1;
        for (std::size_t k = 0; k < r.size(); ++k) {
            // rref rows have primitive integer entries, pivot not necessarily 1
            v[pivots[k]] = -r[k][j] / r[k][pivots[k]];
        }
        basis.push_back(primitive_signless(v));
    }
    return basis;
}

std::optional<QVec> solve(QMat m, QVec rhs, std::size_t cols) {
    if (m.size() != rhs.size()) throw DimensionError("solve: rhs size mismatch");
    for (std::size_t i = 0; i < m.size(); ++i) m[i].push_back(rhs[i]);
    std::vector<std::size_t> pivots = eliminate(m, cols);
    // inconsistent if a zero row has nonzero rhs
    for (std::size_t r = pivots.size(); r < m.size(); ++r)
        if (sgn(m[r][cols]) != 0) return std::nullopt;
    QVec x = zeros(cols);
    for (std::size_t k = pivots.size(); k-- > 0;) {
        std::size_t col = pivots[k];
        Rat acc = m[k][cols];
        for (std::size_t c = col + 1; c < cols; ++c) acc -= m[k][c] * x[c];
        x[col] = acc / m[k][col];
    }
    return x;
}

QVec project_rowspace(const QVec& v, const QMat& basis) {
    QMat b = rref(basis);
    if (b.empty()) return zeros(v.size());
    // Gram system (b b^T) c = b v
    QMat gram(b.size(), zeros(b.size()));
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) gram[i][j] = dot(b[i], b[j]);
    QVec rhs = mat_vec(b, v);
    auto c = solve(gram, rhs, b.size());
    if (!c) throw Error("project_rowspace: singular Gram matrix"); // unreachable: rref rows independent
    QVec p = zeros(v.size());
    for (std::size_t i = 0; i < b.size(); ++i) p = add(p, scale((*c)[i], b[i]));
    return p;
}

} // namespace conecq
