#include "irrvir/frames.hpp"

#include <set>

namespace irrvir {

namespace {

LaurentPoly cvar(const VarTablePtr& vars, int k, int top) {
    if (k < 1 || k > top) return LaurentPoly::constant(vars, Rational(0));
    return LaurentPoly::variable(vars, "c" + std::to_string(k));
}

std::string cname(int k) { return "c" + std::to_string(k); }

Rational factorial(int n) {
    Rational f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

void consistency(bool ok, const std::string& what) {
    if (!ok) throw Error(ErrorKind::InternalConsistency, what);
}

CanonicalOperator expand(int r, RankKind kind, bool d_basis, const VarTablePtr& vars, const std::string& t,
                         std::vector<LaurentPoly> full) {
    CanonicalOperator op;
    op.r = r;
    op.kind = kind;
    op.d_basis = d_basis;
    op.expansion_var = t;
    op.coeff.assign(static_cast<std::size_t>(r), std::vector<LaurentPoly>(static_cast<std::size_t>(r)));
    const std::size_t tv = vars->index(t);
    for (std::size_t m = 0; m < full.size(); ++m) {
        auto [lo, hi] = full[m].degree_range(tv);
        if (!full[m].is_zero() && (lo < 0 || hi > r - 1))
            throw Error(ErrorKind::DegreeOverflow, "coefficient of generator " + std::to_string(m) + " has " + t +
                                                      "-degree outside 0.." + std::to_string(r - 1));
        for (int i = 0; i < r; ++i) op.coeff[static_cast<std::size_t>(i)][m] = coeff(full[m], tv, i);
    }
    op.full = std::move(full);
    return op;
}

}  // namespace

LaurentPoly VectorField::operator()(const LaurentPoly& f) const {
    LaurentPoly out = LaurentPoly::constant(f.vars(), Rational(0));
    for (const auto& [name, c] : comps) {
        if (c.is_zero()) continue;
        if (!f.vars() || !f.uses(name)) continue;
        out += c * derivative(f, name);
    }
    return out;
}

LaurentPoly VectorField::component(const std::string& coord) const {
    auto it = comps.find(coord);
    return it == comps.end() ? LaurentPoly(0) : it->second;
}

bool operator==(const VectorField& a, const VectorField& b) {
    std::set<std::string> names;
    for (const auto& [k, v] : a.comps) names.insert(k);
    for (const auto& [k, v] : b.comps) names.insert(k);
    for (const auto& k : names)
        if (a.component(k) != b.component(k)) return false;
    return true;
}

VectorField bracket(const VectorField& x, const VectorField& y) {
    VectorField out;
    std::set<std::string> names;
    for (const auto& [k, v] : x.comps) names.insert(k);
    for (const auto& [k, v] : y.comps) names.insert(k);
    for (const auto& k : names) {
        LaurentPoly c = x(y.component(k)) - y(x.component(k));
        if (!c.is_zero()) out.comps[k] = c;
    }
    return out;
}

VectorField operator+(const VectorField& a, const VectorField& b) {
    VectorField out = a;
    for (const auto& [k, v] : b.comps) {
        LaurentPoly s = out.component(k) + v;
        if (s.is_zero()) out.comps.erase(k);
        else out.comps[k] = s;
    }
    return out;
}

VectorField operator*(const LaurentPoly& c, const VectorField& x) {
    VectorField out;
    for (const auto& [k, v] : x.comps) {
        LaurentPoly s = c * v;
        if (!s.is_zero()) out.comps[k] = s;
    }
    return out;
}

std::vector<LaurentPoly> series_inverse_coeffs(const VarTablePtr& vars, int r, int count) {
    std::vector<LaurentPoly> a;
    LaurentPoly inv = cvar(vars, r, r).inverse();
    for (int p = 0; p < count; ++p) {
        if (p == 0) {
            a.push_back(inv);
            continue;
        }
        LaurentPoly s = LaurentPoly::constant(vars, Rational(0));
        for (int m = 0; m < p; ++m) s += a[static_cast<std::size_t>(m)] * cvar(vars, r - (p - m), r);
        a.push_back(-s * inv);
    }
    return a;
}

VectorFieldSet integer_fields(const VarTablePtr& vars, int r) {
    VectorFieldSet set;
    set.r = r;
    set.kind = RankKind::Integer;
    for (int k = 1; k <= r; ++k) set.coords.push_back(cname(k));
    for (int n = 0; n < r; ++n) {
        VectorField f;
        for (int k = 1; k + n <= r; ++k) f.comps[cname(k)] = LaurentPoly(k) * cvar(vars, n + k, r);
        set.fields.push_back(std::move(f));
    }
    return set;
}

FrameMatrix build_frame_integer(const VarTablePtr& vars, int r) {
    if (r < 2) throw Error(ErrorKind::Usage, "integer frame needs r >= 2");
    VectorFieldSet fields = integer_fields(vars, r);
    FrameMatrix f;
    f.r = r;
    f.kind = RankKind::Integer;
    f.coords = fields.coords;
    f.m = zero_matrix(static_cast<std::size_t>(r), static_cast<std::size_t>(r));
    for (int n = 0; n < r; ++n)
        for (int k = 1; k <= r; ++k)
            f.m[static_cast<std::size_t>(n)][static_cast<std::size_t>(k - 1)] =
                fields.fields[static_cast<std::size_t>(n)].component(cname(k));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            if (i + j > r - 1) consistency(f.m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].is_zero(), "M not anti-triangular");
    f.det = det_bareiss(f.m);
    Rational sign = ((r * (r - 1) / 2) % 2) ? -1 : 1;
    consistency(f.det == cvar(vars, r, r).pow(static_cast<unsigned>(r)) * (sign * factorial(r)), "det M formula");
    f.inverse = inverse_cramer(f.m);
    // Row r of the inverse is (a_{k-1}/r)_k.
    auto a = series_inverse_coeffs(vars, r, r);
    std::vector<LaurentPoly> row;
    for (int k = 0; k < r; ++k) row.push_back(a[static_cast<std::size_t>(k)] * Rational(1, r));
    for (int j = 0; j < r; ++j) {
        LaurentPoly s;
        for (int k = 0; k < r; ++k) s.add_product(row[static_cast<std::size_t>(k)], f.m[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)]);
        consistency(s == LaurentPoly(j == r - 1 ? 1 : 0), "row-inverse identity");
    }
    consistency(row == f.inverse[static_cast<std::size_t>(r - 1)], "Cramer row differs from series row");
    return f;
}

LaurentPoly leading_integer_coefficient(const VarTablePtr& vars, int r) {
    Rational c((r - 1) % 2 ? -1 : 1, r);
    c.canonicalize();
    return cvar(vars, r - 1, r).pow(static_cast<unsigned>(r - 1)) * c;
}

CanonicalOperator build_lstar_integer(const VarTablePtr& vars, int r) {
    FrameMatrix f = build_frame_integer(vars, r);
    LaurentPoly cr_pow = cvar(vars, r, r).pow(static_cast<unsigned>(r));
    std::vector<LaurentPoly> full;
    for (int n = 0; n < r; ++n) full.push_back(cr_pow * f.inverse[static_cast<std::size_t>(r - 1)][static_cast<std::size_t>(n)]);
    CanonicalOperator op = expand(r, RankKind::Integer, true, vars, cname(r), std::move(full));
    for (int n = 0; n < r; ++n) {
        LaurentPoly expect = n == r - 1 ? leading_integer_coefficient(vars, r) : LaurentPoly(0);
        consistency(op.coeff[0][static_cast<std::size_t>(n)] == expect, "shape of f_0");
    }
    return op;
}

LaurentPoly half_scalar(const VarTablePtr& vars, int r, int m) {
    if (m == 2 * r - 1) return LaurentPoly::variable(vars, "Lambda");
    LaurentPoly s = LaurentPoly::constant(vars, Rational(0));
    if (m > 2 * r - 1) return s;
    for (int a = 1; a <= r - 1; ++a) s -= cvar(vars, a, r - 1) * cvar(vars, m - a, r - 1);
    return s;
}

VectorFieldSet build_half_fields(const VarTablePtr& vars, int r) {
    if (r < 2) throw Error(ErrorKind::Usage, "half-integer fields need r >= 2");
    VectorFieldSet set;
    set.r = r;
    set.kind = RankKind::Half;
    for (int k = 1; k <= r - 1; ++k) set.coords.push_back(cname(k));
    set.coords.push_back("Lambda");
    LaurentPoly lam = LaurentPoly::variable(vars, "Lambda");

    VectorField v0;
    for (int k = 1; k <= r - 1; ++k) v0.comps[cname(k)] = LaurentPoly(k) * cvar(vars, k, r - 1);
    v0.comps["Lambda"] = LaurentPoly(2 * r - 1) * lam;
    set.fields.push_back(v0);

    // y_j = S_{r-1+j}; A[j][k] = dy_j/dc_k is upper triangular with diagonal -2 c_{r-1}.
    const int n_eq = r - 1;
    PolyMatrix A = zero_matrix(static_cast<std::size_t>(n_eq), static_cast<std::size_t>(n_eq));
    for (int j = 1; j <= n_eq; ++j)
        for (int k = 1; k <= n_eq; ++k)
            A[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(k - 1)] = derivative(half_scalar(vars, r, r - 1 + j), cname(k));
    LaurentPoly diag = cvar(vars, r - 1, r - 1) * Rational(-2);
    consistency(det_bareiss(A) == diag.pow(static_cast<unsigned>(n_eq)), "Jacobian of the y-coordinates");
    LaurentPoly diag_inv = diag.inverse();
    for (int n = 1; n < r; ++n) {
        std::vector<LaurentPoly> h(static_cast<std::size_t>(n_eq));
        for (int j = n_eq; j >= 1; --j) {
            LaurentPoly rhs = LaurentPoly(r - 1 + j - n) * half_scalar(vars, r, r - 1 + j + n);
            for (int k = j + 1; k <= n_eq; ++k)
                rhs -= A[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(k - 1)] * h[static_cast<std::size_t>(k - 1)];
            for (int k = 1; k < j; ++k)
                consistency(A[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(k - 1)].is_zero(), "y-system not triangular");
            h[static_cast<std::size_t>(j - 1)] = rhs * diag_inv;
        }
        VectorField vn;
        for (int k = 1; k <= n_eq; ++k) {
            const LaurentPoly& c = h[static_cast<std::size_t>(k - 1)];
            if (n + k > r) consistency(c.is_zero(), "h_{n,k} nonzero for n+k > r");
            if (!c.is_zero()) vn.comps[cname(k)] = c;
        }
        set.fields.push_back(std::move(vn));
    }
    // V_n(S_m) = (m-n) S_{m+n} for r <= m <= 2r-1.
    for (int n = 0; n < r; ++n)
        for (int m = r; m <= 2 * r - 1; ++m)
            consistency(set.fields[static_cast<std::size_t>(n)](half_scalar(vars, r, m)) ==
                            LaurentPoly(m - n) * half_scalar(vars, r, m + n),
                        "V_n(S_m) relation");
    for (int a = 0; a < r; ++a)
        for (int b = a + 1; b < r; ++b) {
            VectorField expect;
            if (a + b < r) expect = LaurentPoly(b - a) * set.fields[static_cast<std::size_t>(a + b)];
            consistency(bracket(set.fields[static_cast<std::size_t>(a)], set.fields[static_cast<std::size_t>(b)]) == expect,
                        "truncated bracket table");
        }
    return set;
}

Rational half_kappa(int r) {
    Rational k = ((r * (r - 1) / 2) % 2) ? -(2 * r - 1) : (2 * r - 1);
    for (int n = 1; n <= r - 1; ++n) {
        Rational f(-(2 * r - 2 * n - 1), 2);
        f.canonicalize();
        k *= f;
    }
    return k;
}

FrameMatrix build_frame_half(const VarTablePtr& vars, int r) {
    VectorFieldSet fields = build_half_fields(vars, r);
    FrameMatrix f;
    f.r = r;
    f.kind = RankKind::Half;
    f.coords = fields.coords;
    f.m = zero_matrix(static_cast<std::size_t>(r), static_cast<std::size_t>(r));
    for (int n = 0; n < r; ++n)
        for (int k = 0; k < r; ++k)
            f.m[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)] =
                fields.fields[static_cast<std::size_t>(n)].component(f.coords[static_cast<std::size_t>(k)]);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            if (i + j > r - 1) consistency(f.m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].is_zero(), "frame not anti-triangular");
    f.det = det_bareiss(f.m);
    LaurentPoly expect = LaurentPoly::variable(vars, "Lambda", r) *
                         LaurentPoly::variable(vars, cname(r - 1), -(r - 1)) * half_kappa(r);
    consistency(f.det == expect, "det formula for the half-integer frame");
    f.inverse = inverse_cramer(f.m);
    return f;
}

CanonicalOperator build_lstar_half(const VarTablePtr& vars, int r) {
    FrameMatrix f = build_frame_half(vars, r);
    LaurentPoly lam_pow = LaurentPoly::variable(vars, "Lambda", r);
    std::vector<LaurentPoly> full;
    for (int m = 0; m < r; ++m) full.push_back(lam_pow * f.inverse[static_cast<std::size_t>(r - 1)][static_cast<std::size_t>(m)]);
    CanonicalOperator op = expand(r, RankKind::Half, false, vars, "Lambda", std::move(full));
    leading_half_ratio(op, vars);
    return op;
}

Rational leading_half_ratio(const CanonicalOperator& op, const VarTablePtr& vars) {
    const int r = op.r;
    const auto& f0 = op.coeff[0];
    for (int m = 0; m < r - 1; ++m)
        if (!f0[static_cast<std::size_t>(m)].is_zero())
            throw Error(ErrorKind::ProportionalityFailure, "f_0 has an L_" + std::to_string(m) + " component");
    const LaurentPoly& c = f0[static_cast<std::size_t>(r - 1)];
    LaurentPoly shape = LaurentPoly::variable(vars, cname(r - 1), 2 * r - 2);
    if (!c.is_unit() || c.leading_term().mono != shape.leading_term().mono)
        throw Error(ErrorKind::ProportionalityFailure, "f_0 coefficient " + c.to_string() + " is not a multiple of " + shape.to_string());
    return c.leading_term().coeff;
}

}  // namespace irrvir
