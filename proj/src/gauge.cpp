#include "irrvir/gauge.hpp"

#include <algorithm>
#include <climits>
#include <map>

#include "irrvir/linalg.hpp"

namespace irrvir {

namespace {

constexpr int kOpen = INT_MAX / 4;

std::string cname(int k) { return "c" + std::to_string(k); }

LaurentPoly zero_of(const VarTablePtr& vars) { return LaurentPoly::constant(vars, Rational(0)); }

// p = sum_d t^d p_d
std::map<int, LaurentPoly> t_pieces(const LaurentPoly& p, std::size_t tv) {
    std::map<int, LaurentPoly> out;
    if (p.is_zero()) return out;
    auto [lo, hi] = p.degree_range(tv);
    for (int d = lo; d <= hi; ++d) {
        LaurentPoly c = coeff(p, tv, d);
        if (!c.is_zero()) out.emplace(d, std::move(c));
    }
    return out;
}

bool uses_any(const LaurentPoly& p, const std::vector<std::size_t>& idx) {
    return std::any_of(idx.begin(), idx.end(), [&](std::size_t i) { return p.uses(i); });
}

bool uses_any(const ModuleVector& v, const std::vector<std::size_t>& idx) {
    for (const auto& [lam, c] : v.terms())
        if (uses_any(c, idx)) return true;
    return false;
}

// Cut a window just below the first coefficient that still depends on an unsolved symbol.
TruncatedSeries cut_pending(const TruncatedSeries& s, const std::vector<std::size_t>& pending) {
    if (pending.empty()) return s;
    for (int k = s.low(); k <= s.top(); ++k)
        if (uses_any(s.at(k), pending)) return s.truncated(k - 1);
    return s;
}

VectorSeries cut_pending(VectorSeries s, const std::vector<std::size_t>& pending) {
    if (pending.empty()) return s;
    for (std::size_t i = 0; i < s.coeffs.size(); ++i)
        if (uses_any(s.coeffs[i], pending)) {
            s.high = std::min(s.high, s.low + static_cast<int>(i) - 1);
            break;
        }
    if (s.high - s.low + 1 < static_cast<int>(s.coeffs.size()))
        s.coeffs.resize(static_cast<std::size_t>(std::max(0, s.high - s.low + 1)));
    return s;
}

int window_of(const TruncatedSeries& s) { return s.high() ? *s.high() : kOpen; }

VectorSeries vs_zero(const ContextPtr&, int high = kOpen) {
    VectorSeries s;
    s.low = 0;
    s.high = high;
    return s;
}

VectorSeries vs_add(const VectorSeries& a, const VectorSeries& b, const ContextPtr& ctx, const LaurentPoly& scale_b = LaurentPoly(1)) {
    VectorSeries out;
    out.low = std::min(a.coeffs.empty() ? b.low : a.low, b.coeffs.empty() ? a.low : b.low);
    out.high = std::min(a.high, b.high);
    int top = std::max(a.low + static_cast<int>(a.coeffs.size()), b.low + static_cast<int>(b.coeffs.size())) - 1;
    top = std::min(top, out.high);
    for (int k = out.low; k <= top; ++k) {
        ModuleVector v = a.at(k, ctx);
        v.add_scaled(b.at(k, ctx), scale_b);
        out.coeffs.push_back(std::move(v));
    }
    return out;
}

// p(t) X
VectorSeries vs_scale(const LaurentPoly& p, std::size_t tv, const VectorSeries& x, const ContextPtr& ctx) {
    auto pieces = t_pieces(p, tv);
    if (pieces.empty()) return vs_zero(ctx);
    const int dlo = pieces.begin()->first;
    VectorSeries out;
    out.low = x.low + dlo;
    out.high = x.high == kOpen ? kOpen : x.high + dlo;
    int top = std::min(x.low + static_cast<int>(x.coeffs.size()) - 1 + pieces.rbegin()->first, out.high);
    for (int m = out.low; m <= top; ++m) {
        ModuleVector v(ctx);
        for (const auto& [d, c] : pieces) v.add_scaled(x.at(m - d, ctx), c);
        out.coeffs.push_back(std::move(v));
    }
    return out;
}

VectorSeries vs_times(const TruncatedSeries& a, const VectorSeries& x, const ContextPtr& ctx) {
    TruncatedSeries s = a.trimmed();
    if (s.top() < s.low()) {
        VectorSeries z = vs_zero(ctx, s.high() ? *s.high() + x.low : kOpen);
        return z;
    }
    VectorSeries out;
    out.low = s.low() + x.low;
    out.high = x.high == kOpen ? kOpen : x.high + s.low();
    if (s.high()) out.high = std::min(out.high, *s.high() + x.low);
    int top = std::min(s.top() + x.low + static_cast<int>(x.coeffs.size()) - 1, out.high);
    for (int m = out.low; m <= top; ++m) {
        ModuleVector v(ctx);
        for (int i = s.low(); i <= s.top(); ++i) v.add_scaled(x.at(m - i, ctx), s.at(i));
        out.coeffs.push_back(std::move(v));
    }
    return out;
}

template <class F>
VectorSeries vs_map(const VectorSeries& x, F&& f) {
    VectorSeries out;
    out.low = x.low;
    out.high = x.high;
    for (const auto& v : x.coeffs) out.coeffs.push_back(f(v));
    return out;
}

bool vs_zero_on_window(const VectorSeries& x) {
    return std::all_of(x.coeffs.begin(), x.coeffs.end(), [](const ModuleVector& v) { return v.is_zero(); });
}

std::string vs_first_nonzero(const VectorSeries& x) {
    for (std::size_t i = 0; i < x.coeffs.size(); ++i) {
        if (x.coeffs[i].is_zero()) continue;
        const auto& [lam, c] = *x.coeffs[i].terms().begin();
        std::string s = c.to_string();
        if (s.size() > 160) s = s.substr(0, 160) + "...";
        return "order " + std::to_string(x.low + static_cast<int>(i)) + ", " + lam.to_string() + ": " + s;
    }
    return "";
}

std::string ts_first_nonzero(const TruncatedSeries& s) {
    for (int k = s.low(); k <= s.top(); ++k) {
        LaurentPoly c = s.at(k);
        if (c.is_zero()) continue;
        std::string txt = c.to_string();
        if (txt.size() > 160) txt = txt.substr(0, 160) + "...";
        return "order " + std::to_string(k) + ": " + txt;
    }
    return "";
}

// p(t) s
TruncatedSeries ts_scale(const LaurentPoly& p, std::size_t tv, const TruncatedSeries& s) {
    TruncatedSeries out = TruncatedSeries::zero(s.var());
    for (const auto& [d, c] : t_pieces(p, tv)) out = out + (s * c).shifted(d);
    if (p.is_zero()) return TruncatedSeries::zero(s.var(), s.high());
    return out;
}

// Field applied to a scalar series in t whose coefficients are t-free.
TruncatedSeries ts_field(const VectorField& f, const std::string& t, std::size_t tv, const TruncatedSeries& s) {
    TruncatedSeries out = TruncatedSeries::zero(t, s.high());
    for (const auto& [coord, comp] : f.comps) {
        if (comp.is_zero()) continue;
        TruncatedSeries d;
        if (coord == t) {
            std::vector<LaurentPoly> cs;
            for (int k = s.low(); k <= s.top(); ++k) cs.push_back(s.at(k) * Rational(k));
            d = TruncatedSeries(t, s.low(), std::move(cs), s.high()).shifted(-1);
        } else {
            d = s.map([&](const LaurentPoly& c) { return derivative(c, coord); });
        }
        out = out + ts_scale(comp, tv, d);
    }
    return out;
}

// d/dc_k on the base module: coefficients and the cyclic vector via the lower equations of rank r-1.
class BaseDerivation {
public:
    BaseDerivation(const ContextPtr& ctx, const VarTablePtr& vars, int rho, const std::string& base_c0) : ctx_(ctx), rho_(rho) {
        VectorFieldSet f = integer_fields(vars, rho);
        PolyMatrix m = zero_matrix(static_cast<std::size_t>(rho), static_cast<std::size_t>(rho));
        for (int i = 0; i < rho; ++i)
            for (int k = 0; k < rho; ++k) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = f.fields[static_cast<std::size_t>(i)].component(cname(k + 1));
        PolyMatrix inv = inverse_cramer(m);
        ModuleVector v0 = ModuleVector::cyclic(ctx, LaurentPoly::constant(vars, Rational(1)));
        std::vector<ModuleVector> lower;
        for (int i = 0; i < rho; ++i) {
            LaurentPoly scalar = i == 0 ? delta_of(vars, base_c0) : general_lambda(vars, rho, i, base_c0);
            ModuleVector w = apply_mode(i, v0);
            w.add_scaled(v0, -scalar);
            lower.push_back(std::move(w));
        }
        for (int k = 0; k < rho; ++k) {
            ModuleVector d(ctx);
            for (int i = 0; i < rho; ++i) d.add_scaled(lower[static_cast<std::size_t>(i)], inv[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)]);
            dv0_.push_back(std::move(d));
        }
    }

    bool handles(const std::string& coord) const {
        for (int k = 1; k <= rho_; ++k)
            if (coord == cname(k)) return true;
        return false;
    }

    ModuleVector apply(const std::string& coord, const ModuleVector& x) {
        const int k = std::stoi(coord.substr(1)) - 1;
        ModuleVector out(ctx_);
        for (const auto& [lam, c] : x.terms()) {
            LaurentPoly dc = derivative(c, coord);
            if (!dc.is_zero()) out.add_term(lam, dc);
            out.add_scaled(word(k, lam), c);
        }
        return out;
    }

private:
    const ModuleVector& word(int k, const Partition& lam) {
        auto key = std::make_pair(k, lam);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        std::vector<int> modes;
        for (int p : lam.parts()) modes.push_back(rho_ - p);
        return cache_.emplace(key, apply_word(modes, dv0_[static_cast<std::size_t>(k)])).first->second;
    }

    ContextPtr ctx_;
    int rho_;
    std::vector<ModuleVector> dv0_;
    std::map<std::pair<int, Partition>, ModuleVector> cache_;
};

VectorSeries vs_field(const VectorField& f, const std::string& t, std::size_t tv, BaseDerivation& der, const VectorSeries& x,
                      const ContextPtr& ctx) {
    VectorSeries out = vs_zero(ctx, x.high);
    for (const auto& [coord, comp] : f.comps) {
        if (comp.is_zero()) continue;
        VectorSeries d;
        if (coord == t) {
            d.low = x.low - 1;
            d.high = x.high == kOpen ? kOpen : x.high - 1;
            for (std::size_t i = 0; i < x.coeffs.size(); ++i) {
                const int k = x.low + static_cast<int>(i);
                ModuleVector v = x.coeffs[i] * LaurentPoly(k);
                d.coeffs.push_back(v);
            }
            out = vs_add(out, vs_scale(comp, tv, d, ctx), ctx);
            d = vs_map(x, [&](const ModuleVector& v) { return v.map([&](const LaurentPoly& c) { return derivative(c, coord); }); });
        } else if (der.handles(coord)) {
            d = vs_map(x, [&](const ModuleVector& v) { return der.apply(coord, v); });
        } else {
            d = vs_map(x, [&](const ModuleVector& v) { return v.map([&](const LaurentPoly& c) { return derivative(c, coord); }); });
        }
        out = vs_add(out, vs_scale(comp, tv, d, ctx), ctx);
    }
    return out;
}

std::vector<std::size_t> pending_indices(const IrregularSeries& s) {
    std::vector<std::size_t> out;
    for (const auto& name : s.ledger.pending()) out.push_back(s.vars()->index(name));
    return out;
}

// Unsolved constant terms are unknown functions of the frame coordinates, so
// the tail is only usable below the first order that contains one.
VectorSeries tail_series(const IrregularSeries& s) {
    const auto pending = pending_indices(s);
    VectorSeries w;
    w.low = 0;
    for (const auto& v : s.v) {
        if (uses_any(v, pending)) break;
        w.coeffs.push_back(v);
    }
    w.high = static_cast<int>(w.coeffs.size()) - 1;
    return w;
}

}  // namespace

ModuleVector VectorSeries::at(int k, const ContextPtr& ctx) const {
    if (k < low || k >= low + static_cast<int>(coeffs.size())) return ModuleVector(ctx);
    return coeffs[static_cast<std::size_t>(k - low)];
}

TruncatedSeries VectorSeries::constant_terms(const std::string& var) const {
    std::vector<LaurentPoly> cs;
    for (const auto& v : coeffs) cs.push_back(constant_term(v));
    return TruncatedSeries(var, low, std::move(cs), high == kOpen ? std::nullopt : std::optional<int>(high));
}

std::vector<std::string> passive_variables(const RankSpec& rank) {
    if (rank.kind == RankKind::Integer) return {"Q", "c0p", "c0"};
    return {"Q", "c0"};
}

FrameMatrix frame_for(const RankSpec& rank, const VarTablePtr& vars) {
    return rank.kind == RankKind::Integer ? build_frame_integer(vars, rank.r) : build_frame_half(vars, rank.r);
}

TruncatedSeries series_from_poly(const LaurentPoly& p, const std::string& var) {
    if (p.is_zero()) return TruncatedSeries::zero(var);
    const std::size_t tv = p.vars()->index(var);
    auto pieces = t_pieces(p, tv);
    const int lo = pieces.begin()->first;
    std::vector<LaurentPoly> cs(static_cast<std::size_t>(pieces.rbegin()->first - lo + 1), zero_of(p.vars()));
    for (auto& [d, c] : pieces) cs[static_cast<std::size_t>(d - lo)] = c;
    return TruncatedSeries::exact(var, lo, std::move(cs));
}

// ---------------------------------------------------------------- completion

namespace {

void enumerate_monomials(const VarTablePtr& vars, const std::vector<std::size_t>& idx, const std::vector<int>& weights,
                         const std::vector<int>& lower, int target, std::size_t pos, Monomial cur, int acc,
                         std::vector<Monomial>& out, int reach) {
    if (pos + 1 == idx.size()) {
        const int rest = target - acc;
        const int w = weights[pos];
        if (rest % w != 0) return;
        const int e = rest / w;
        if (e < lower[pos]) return;
        cur.set(idx[pos], e);
        out.push_back(cur);
        return;
    }
    const int w = weights[pos];
    for (int e = lower[pos]; e * w <= reach; ++e) {
        cur.set(idx[pos], e);
        enumerate_monomials(vars, idx, weights, lower, target, pos + 1, cur, acc + e * w, out, reach);
    }
}

struct LinearRow {
    std::map<std::size_t, Rational> a;
    Rational b;
};

}  // namespace

ScalarCompletion scalar_completion_half(const VarTablePtr& vars, int r, int bound) {
    if (r < 2) throw Error(ErrorKind::Usage, "scalar completion needs r >= 2");
    if (bound < 1) throw Error(ErrorKind::Usage, "bound must be >= 1");
    VectorFieldSet fields = build_half_fields(vars, r);
    FrameMatrix frame = build_frame_half(vars, r);
    const auto& row = frame.inverse[static_cast<std::size_t>(r - 1)];

    std::vector<std::size_t> idx;
    std::vector<int> weights, lower;
    for (int k = 1; k <= r - 1; ++k) {
        idx.push_back(vars->index(cname(k)));
        weights.push_back(k);
        lower.push_back(k == r - 1 ? -bound : 0);
    }
    idx.push_back(vars->index("Lambda"));
    weights.push_back(2 * r - 1);
    lower.push_back(-bound);

    struct Unknown {
        int slot;
        LaurentPoly mono;
    };
    std::vector<Unknown> unknowns;
    for (int n = 0; n < r; ++n) {
        std::vector<Monomial> monos;
        const int reach = n + bound * ((r - 1) + (2 * r - 1));
        enumerate_monomials(vars, idx, weights, lower, n, 0, Monomial{}, 0, monos, reach);
        std::sort(monos.begin(), monos.end(), MonomialLess{});
        for (const auto& m : monos) unknowns.push_back({n, LaurentPoly::monomial(vars, m, Rational(1))});
    }

    // Equations: Maurer-Cartan pairs, then the gauge constraint.
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) pairs.emplace_back(i, j);
    const std::size_t n_eq = pairs.size() + 1;
    std::vector<std::map<Monomial, LinearRow, MonomialLess>> rows(n_eq);
    auto add = [&](std::size_t eq, const LaurentPoly& p, std::optional<std::size_t> col) {
        for (const auto& t : p.terms()) {
            LinearRow& lr = rows[eq][t.mono];
            if (col) lr.a[*col] += t.coeff;
            else lr.b += t.coeff;
        }
    };
    for (std::size_t u = 0; u < unknowns.size(); ++u) {
        const auto& [slot, m] = unknowns[u];
        for (std::size_t e = 0; e < pairs.size(); ++e) {
            auto [i, j] = pairs[e];
            if (slot == j) add(e, fields.fields[static_cast<std::size_t>(i)](m), u);
            if (slot == i) add(e, -fields.fields[static_cast<std::size_t>(j)](m), u);
            if (slot == i + j) add(e, m * Rational(-(j - i)), u);
        }
        add(pairs.size(), row[static_cast<std::size_t>(slot)] * m, u);
    }
    for (std::size_t e = 0; e < pairs.size(); ++e) {
        auto [i, j] = pairs[e];
        if (i + j >= r) add(e, half_scalar(vars, r, i + j) * Rational(j - i), std::nullopt);
    }

    std::vector<LinearRow> sys;
    for (auto& eq : rows)
        for (auto& [mono, lr] : eq) {
            for (auto it = lr.a.begin(); it != lr.a.end();) it = it->second == 0 ? lr.a.erase(it) : std::next(it);
            if (!lr.a.empty() || lr.b != 0) sys.push_back(std::move(lr));
        }

    // Reduced row echelon form, pivoting on the earliest column.
    const std::size_t ncol = unknowns.size();
    std::vector<std::vector<Rational>> mat(sys.size(), std::vector<Rational>(ncol + 1));
    for (std::size_t i = 0; i < sys.size(); ++i) {
        for (const auto& [c, v] : sys[i].a) mat[i][c] = v;
        mat[i][ncol] = sys[i].b;
    }
    std::vector<std::size_t> pivots;
    std::size_t prow = 0;
    for (std::size_t c = 0; c < ncol && prow < mat.size(); ++c) {
        std::size_t p = prow;
        while (p < mat.size() && mat[p][c] == 0) ++p;
        if (p == mat.size()) continue;
        std::swap(mat[p], mat[prow]);
        Rational inv = 1 / mat[prow][c];
        for (auto& x : mat[prow]) x *= inv;
        for (std::size_t i = 0; i < mat.size(); ++i) {
            if (i == prow || mat[i][c] == 0) continue;
            Rational f = mat[i][c];
            for (std::size_t k = c; k <= ncol; ++k) mat[i][k] -= f * mat[prow][k];
        }
        pivots.push_back(c);
        ++prow;
    }
    for (std::size_t i = prow; i < mat.size(); ++i)
        if (mat[i][ncol] != 0)
            throw Error(ErrorKind::Infeasible, "no scalar completion with exponents bounded below by -" + std::to_string(bound));

    ScalarCompletion sc;
    sc.r = r;
    sc.bound = bound;
    sc.unknowns = ncol;
    sc.sigma.assign(static_cast<std::size_t>(r), zero_of(vars));
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        const Rational& v = mat[i][ncol];
        if (v == 0) continue;
        const auto& u = unknowns[pivots[i]];
        sc.sigma[static_cast<std::size_t>(u.slot)] += u.mono * v;
        ++sc.support;
    }

    for (auto [i, j] : pairs) {
        LaurentPoly rhs = i + j >= r ? half_scalar(vars, r, i + j) : sc.sigma[static_cast<std::size_t>(i + j)];
        LaurentPoly res = fields.fields[static_cast<std::size_t>(i)](sc.sigma[static_cast<std::size_t>(j)]) -
                          fields.fields[static_cast<std::size_t>(j)](sc.sigma[static_cast<std::size_t>(i)]) - rhs * Rational(j - i);
        ResidualEntry e{"V_" + std::to_string(i) + " sigma_" + std::to_string(j) + " - V_" + std::to_string(j) + " sigma_" +
                            std::to_string(i) + " - " + std::to_string(j - i) + (i + j >= r ? " S_" : " sigma_") + std::to_string(i + j),
                        -1, res.is_zero(), res.is_zero() ? "" : res.to_string()};
        sc.checks.push_back(e);
    }
    sc.gauge_certificate = zero_of(vars);
    for (int i = 0; i < r; ++i) sc.gauge_certificate += row[static_cast<std::size_t>(i)] * sc.sigma[static_cast<std::size_t>(i)];
    sc.checks.push_back({"sum_i (M^-1)_{r,i+1} sigma_i = 0", -1, sc.gauge_certificate.is_zero(), sc.gauge_certificate.to_string()});
    for (const auto& e : sc.checks)
        if (!e.zero) throw Error(ErrorKind::InternalConsistency, "completion residual " + e.relation + ": " + e.detail);
    return sc;
}

ScalarCompletion scalar_completion_search(const VarTablePtr& vars, int r, int max_bound) {
    for (int b = 1; b <= max_bound; ++b) {
        try {
            return scalar_completion_half(vars, r, b);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::Infeasible) throw;
        }
    }
    throw Error(ErrorKind::Infeasible, "no scalar completion up to bound " + std::to_string(max_bound));
}

// --------------------------------------------------------------- obstructions

ObstructionSet obstructions(const IrregularSeries& series, const std::optional<ScalarCompletion>& completion) {
    const TowerSetup& setup = series.setup;
    const int r = setup.rank.r;
    const VarTablePtr& vars = setup.vars;
    const ContextPtr& ctx = setup.ctx;
    ObstructionSet obs;
    obs.rank = setup.rank;
    obs.vars = vars;
    obs.var = setup.expansion_var;
    obs.pending = series.ledger.pending();
    const std::size_t tv = vars->index(obs.var);
    const auto pending = pending_indices(series);
    if (uses_any(series.nu, pending) || std::any_of(series.g.begin(), series.g.end(), [&](const LaurentPoly& g) { return uses_any(g, pending); }))
        throw Error(ErrorKind::WindowTooSmall, "nu and g_j must be solved; raise the order to at least r-1");

    if (setup.rank.kind == RankKind::Integer) {
        obs.fields = integer_fields(vars, r);
        obs.scalars = setup.scalars;
    } else {
        obs.fields = build_half_fields(vars, r);
        ScalarCompletion sc = completion ? *completion : scalar_completion_half(vars, r, 1);
        if (sc.r != r) throw Error(ErrorKind::Usage, "scalar completion for a different rank");
        obs.scalars = sc.sigma;
    }

    BaseDerivation der(ctx, vars, r - 1, setup.rank.kind == RankKind::Integer ? "c0p" : "c0");
    VectorSeries w = tail_series(series);
    obs.theta = w.constant_terms(obs.var);

    for (int i = 0; i < r; ++i) {
        const VectorField& f = obs.fields.fields[static_cast<std::size_t>(i)];
        LaurentPoly ft = f.component(obs.var);
        if (!f(series.nu).is_zero()) throw Error(ErrorKind::InternalConsistency, "nu depends on the frame coordinates");
        // D_i applied to nu log t + sum_j g_j t^-j
        LaurentPoly dphi = series.nu * ft * LaurentPoly::variable(vars, obs.var, -1);
        for (int j = 1; j < r; ++j) {
            const LaurentPoly& g = series.g[static_cast<std::size_t>(j)];
            dphi += f(g) * LaurentPoly::variable(vars, obs.var, -j);
            dphi -= g * ft * LaurentPoly::variable(vars, obs.var, -j - 1) * Rational(j);
        }
        VectorSeries x = vs_map(w, [&](const ModuleVector& v) { return apply_mode(i, v); });
        x = vs_add(x, vs_scale(obs.scalars[static_cast<std::size_t>(i)], tv, w, ctx), ctx, LaurentPoly(-1));
        x = vs_add(x, vs_field(f, obs.var, tv, der, w, ctx), ctx, LaurentPoly(-1));
        x = vs_add(x, vs_scale(dphi, tv, w, ctx), ctx, LaurentPoly(-1));
        obs.rw.push_back(x);
        TruncatedSeries a = cut_pending(series_divide(x.constant_terms(obs.var), obs.theta), pending);
        obs.a.push_back(a);
        VectorSeries res = cut_pending(vs_add(x, vs_times(a, w, ctx), ctx, LaurentPoly(-1)), pending);
        ResidualEntry e{"R_" + std::to_string(i) + " W = a_" + std::to_string(i) + " W", res.high, vs_zero_on_window(res),
                        vs_first_nonzero(res)};
        if (!e.zero) throw Error(ErrorKind::ProportionalityFailure, e.relation + " fails at " + e.detail);
        obs.checks.push_back(e);
    }

    for (int n = r; n <= 2 * r; ++n) {
        LaurentPoly lam = setup.rank.kind == RankKind::Integer ? (n <= 2 * r ? general_lambda(vars, r, n, "c0") : zero_of(vars))
                                                              : half_scalar(vars, r, n);
        VectorSeries x = vs_map(w, [&](const ModuleVector& v) { return apply_mode(n, v); });
        x = cut_pending(vs_add(x, vs_scale(lam, tv, w, ctx), ctx, LaurentPoly(-1)), pending);
        obs.checks.push_back({"R_" + std::to_string(n) + " W = 0", x.high, vs_zero_on_window(x), vs_first_nonzero(x)});
    }

    FrameMatrix frame = frame_for(setup.rank, vars);
    TruncatedSeries comb = TruncatedSeries::zero(obs.var);
    for (int i = 0; i < r; ++i)
        comb = comb + ts_scale(frame.inverse[static_cast<std::size_t>(r - 1)][static_cast<std::size_t>(i)], tv, obs.a[static_cast<std::size_t>(i)]);
    obs.checks.push_back({"sum_i (M^-1)_{r,i+1} a_i = 0", window_of(comb), comb.is_zero_on_window(), ts_first_nonzero(comb)});
    return obs;
}

VerifyReport frobenius_verify(const ObstructionSet& obs) {
    VerifyReport rep;
    const int r = obs.rank.r;
    if (obs.a.empty()) return rep;
    const std::size_t tv = obs.vars->index(obs.var);
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) {
            const auto& fi = obs.fields.fields[static_cast<std::size_t>(i)];
            const auto& fj = obs.fields.fields[static_cast<std::size_t>(j)];
            TruncatedSeries lhs = ts_field(fi, obs.var, tv, obs.a[static_cast<std::size_t>(j)]) -
                                  ts_field(fj, obs.var, tv, obs.a[static_cast<std::size_t>(i)]);
            std::string rel = "D_" + std::to_string(i) + " a_" + std::to_string(j) + " - D_" + std::to_string(j) + " a_" +
                              std::to_string(i) + " = ";
            if (i + j < r) {
                lhs = lhs - obs.a[static_cast<std::size_t>(i + j)] * LaurentPoly(j - i);
                rel += std::to_string(j - i) + " a_" + std::to_string(i + j);
            } else {
                rel += "0";
            }
            rep.entries.push_back({rel, window_of(lhs), lhs.is_zero_on_window(), ts_first_nonzero(lhs)});
        }
    return rep;
}

PotentialDecomposition integrate_potential(const ObstructionSet& obs, const FrameMatrix& frame) {
    const int r = obs.rank.r;
    const VarTablePtr& vars = obs.vars;
    const std::size_t tv = vars->index(obs.var);
    PotentialDecomposition out;
    out.passive = passive_variables(obs.rank);
    out.window = kOpen;
    if (frame.coords.size() != static_cast<std::size_t>(r) || frame.coords.back() != obs.var)
        throw Error(ErrorKind::Usage, "frame does not match the obstruction set");

    std::vector<TruncatedSeries> comps;
    for (int k = 0; k < r; ++k) {
        TruncatedSeries s = TruncatedSeries::zero(obs.var);
        for (int i = 0; i < r; ++i) s = s + ts_scale(frame.inverse[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)], tv, obs.a[static_cast<std::size_t>(i)]);
        comps.push_back(s);
        out.window = std::min(out.window, window_of(s));
    }
    if (out.window < 0) throw Error(ErrorKind::WindowTooSmall, "potential components known only below order 0; raise the order");
    if (!comps.back().is_zero_on_window())
        throw Error(ErrorKind::ExpansionVariableLeak, "dh/d" + obs.var + " = " + comps.back().to_string());
    for (int k = 0; k + 1 < r; ++k) {
        const TruncatedSeries& s = comps[static_cast<std::size_t>(k)];
        for (int m = s.low(); m <= s.top(); ++m)
            if (m != 0 && !s.at(m).is_zero())
                throw Error(ErrorKind::ExpansionVariableLeak,
                            "dh/d" + frame.coords[static_cast<std::size_t>(k)] + " has a " + obs.var + "^" + std::to_string(m) + " term");
        out.one_form.push_back(s.at(0));
    }

    std::vector<std::size_t> coord_idx;
    for (int k = 1; k < r; ++k) coord_idx.push_back(vars->index(cname(k)));
    std::vector<std::size_t> allowed = coord_idx;
    for (const auto& p : out.passive) allowed.push_back(vars->index(p));
    for (const auto& a : out.one_form)
        for (const auto& t : a.terms())
            for (std::size_t v = 0; v < vars->size(); ++v)
                if (t.mono[v] != 0 && std::find(allowed.begin(), allowed.end(), v) == allowed.end()) {
                    if (v == tv) throw Error(ErrorKind::ExpansionVariableLeak, "one-form depends on " + obs.var);
                    throw Error(ErrorKind::WeightZeroObstruction, "one-form depends on " + vars->name(v));
                }
    for (std::size_t j = 0; j < coord_idx.size(); ++j)
        for (std::size_t k = j + 1; k < coord_idx.size(); ++k)
            if (derivative(out.one_form[k], coord_idx[j]) != derivative(out.one_form[j], coord_idx[k]))
                throw Error(ErrorKind::NotClosed, "d(dh) has a " + cname(static_cast<int>(j + 1)) + "," + cname(static_cast<int>(k + 1)) + " component");

    // c_j A_j = sum_alpha A_{j,alpha} c^alpha; A_{j,alpha} = alpha_j B_alpha off the zero mode.
    auto coord_part = [&](const Monomial& m) {
        Monomial c;
        for (auto v : coord_idx) c.set(v, m[v]);
        return c;
    };
    std::map<Monomial, std::vector<LaurentPoly>, MonomialLess> grouped;
    for (std::size_t j = 0; j < coord_idx.size(); ++j) {
        LaurentPoly cj = out.one_form[j] * LaurentPoly::variable(vars, cname(static_cast<int>(j + 1)));
        for (const auto& t : cj.terms()) {
            Monomial alpha = coord_part(t.mono);
            auto& slot = grouped[alpha];
            if (slot.empty()) slot.assign(coord_idx.size(), zero_of(vars));
            slot[j] += LaurentPoly::monomial(vars, t.mono / alpha, t.coeff);
        }
    }
    out.g0 = zero_of(vars);
    out.nu.assign(static_cast<std::size_t>(r), zero_of(vars));
    for (const auto& [alpha, parts] : grouped) {
        if (alpha.is_one()) {
            for (std::size_t j = 0; j < parts.size(); ++j) out.nu[j + 1] = parts[j];
            continue;
        }
        std::optional<LaurentPoly> b;
        for (std::size_t j = 0; j < parts.size(); ++j) {
            const int aj = alpha[coord_idx[j]];
            if (aj == 0) {
                if (!parts[j].is_zero()) throw Error(ErrorKind::NotClosed, "mode with alpha_j = 0 but nonzero component");
                continue;
            }
            LaurentPoly bj = parts[j] * Rational(1, aj);
            if (b && *b != bj) throw Error(ErrorKind::NotClosed, "alpha_i A_j != alpha_j A_i");
            b = bj;
        }
        out.g0 += *b * LaurentPoly::monomial(vars, alpha, Rational(1));
    }
    for (std::size_t j = 0; j < coord_idx.size(); ++j) {
        LaurentPoly back = derivative(out.g0, coord_idx[j]) + out.nu[j + 1] * LaurentPoly::variable(vars, cname(static_cast<int>(j + 1)), -1);
        if (back != out.one_form[j]) throw Error(ErrorKind::InternalConsistency, "dh reconstruction");
    }
    return out;
}

VerifyReport apply_gauge_and_verify(const IrregularSeries& series, const ObstructionSet& obs, const PotentialDecomposition& decomp) {
    VerifyReport rep;
    const int r = obs.rank.r;
    const VarTablePtr& vars = obs.vars;
    const std::size_t tv = vars->index(obs.var);
    const ContextPtr& ctx = series.setup.ctx;
    const auto pending = pending_indices(series);
    VectorSeries w = tail_series(series);
    for (int i = 0; i < r; ++i) {
        const VectorField& f = obs.fields.fields[static_cast<std::size_t>(i)];
        LaurentPoly dh = f(decomp.g0);
        for (int j = 1; j < r; ++j)
            dh += f.component(cname(j)) * decomp.nu[static_cast<std::size_t>(j)] * LaurentPoly::variable(vars, cname(j), -1);
        VectorSeries res = cut_pending(vs_add(obs.rw[static_cast<std::size_t>(i)], vs_scale(dh, tv, w, ctx), ctx, LaurentPoly(-1)), pending);
        rep.entries.push_back({"R_" + std::to_string(i) + " (f W) = 0", res.high, vs_zero_on_window(res), vs_first_nonzero(res)});
        TruncatedSeries lit = obs.a[static_cast<std::size_t>(i)] - series_from_poly(dh, obs.var);
        rep.entries.push_back({"a_" + std::to_string(i) + " = D_" + std::to_string(i) + "(g_0 + sum nu_j log c_j)", window_of(lit),
                               lit.is_zero_on_window(), ts_first_nonzero(lit)});
    }
    return rep;
}

}  // namespace irrvir
