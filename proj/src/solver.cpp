#include "irrvir/solver.hpp"

#include <algorithm>
#include <map>

namespace irrvir {

namespace {

LaurentPoly var(const VarTablePtr& vars, const std::string& name) { return LaurentPoly::variable(vars, name); }

std::string ename(int k) { return "e" + std::to_string(k); }
std::string gname(int j) { return "g" + std::to_string(j); }

const ModuleVector& vec_at(const std::vector<ModuleVector>& v, int j, const ModuleVector& zero) {
    if (j < 0 || j >= static_cast<int>(v.size())) return zero;
    return v[static_cast<std::size_t>(j)];
}

ModuleVector substitute_vec(const ModuleVector& w, std::size_t idx, const LaurentPoly& value) {
    return w.map([&](const LaurentPoly& c) { return substitute(c, idx, value); });
}

ModuleVector rebind(const ModuleVector& w, const ContextPtr& ctx) { return ModuleVector(ctx, w.terms()); }

std::string first_nonzero(const ModuleVector& w) {
    if (w.is_zero()) return "";
    const auto& [lam, c] = *w.terms().begin();
    std::string s = c.to_string();
    if (s.size() > 200) s = s.substr(0, 200) + "...";
    return "coefficient of " + lam.to_string() + ": " + s;
}

}  // namespace

RankSpec RankSpec::parse(const std::string& text) {
    RankSpec rs;
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            std::size_t used = 0;
            int r = std::stoi(text, &used);
            if (used != text.size() || r < 1) throw Error(ErrorKind::Usage, "rank must be a positive integer or (2m+1)/2");
            rs.kind = RankKind::Integer;
            rs.r = r;
            return rs;
        }
        std::size_t used = 0;
        int num = std::stoi(text.substr(0, slash), &used);
        if (used != slash || text.substr(slash + 1) != "2" || num < 3 || num % 2 == 0)
            throw Error(ErrorKind::Usage, "half ranks have the form (2m+1)/2 with m >= 1");
        rs.kind = RankKind::Half;
        rs.r = (num + 1) / 2;
        return rs;
    } catch (const std::logic_error&) {
        throw Error(ErrorKind::Usage, "cannot parse rank '" + text + "'");
    }
}

std::string RankSpec::to_string() const {
    if (kind == RankKind::Integer) return std::to_string(r);
    return std::to_string(2 * r - 1) + "/2";
}

const UnknownEntry* UnknownLedger::find(const std::string& name) const {
    for (const auto& e : entries)
        if (e.name == name) return &e;
    return nullptr;
}

UnknownEntry* UnknownLedger::find(const std::string& name) {
    for (auto& e : entries)
        if (e.name == name) return &e;
    return nullptr;
}

std::vector<std::string> UnknownLedger::pending() const {
    std::vector<std::string> out;
    for (const auto& e : entries)
        if (!e.solved) out.push_back(e.name);
    return out;
}

VarTablePtr tower_table(const RankSpec& rank, int K) {
    const int r = rank.r;
    const int t_weight = rank.kind == RankKind::Integer ? r : 2 * r - 1;
    std::vector<VarTable::Var> extra;
    for (int j = 1; j <= r - 1; ++j) extra.push_back({gname(j), j * t_weight});
    extra.push_back({"nu", 0});
    for (int k = 1; k <= K; ++k) extra.push_back({ename(k), 0});
    if (extra.size() + 8 > kMaxVars) throw Error(ErrorKind::Usage, "order too large for the variable table");
    return standard_table(rank.kind == RankKind::Integer ? r : r - 1, 2 * r - 1, extra);
}

TowerSetup make_setup(const RankSpec& rank, int K, std::optional<LaurentPoly> central, VarTablePtr vars) {
    if (rank.r < 2) throw Error(ErrorKind::Usage, "tower solvers need r >= 2");
    if (K < 0) throw Error(ErrorKind::Usage, "order must be >= 0");
    TowerSetup s;
    s.rank = rank;
    s.K = K;
    s.vars = vars ? std::move(vars) : tower_table(rank, K);
    s.central = central ? *central : default_central(s.vars);
    const int r = rank.r;
    const int rho = r - 1;
    std::vector<LaurentPoly> eigen;
    const char* base_c0 = rank.kind == RankKind::Integer ? "c0p" : "c0";
    for (int n = rho; n <= 2 * rho; ++n) eigen.push_back(general_lambda(s.vars, r - 1, n, base_c0));
    s.ctx = ModuleContext::irregular(s.vars, rho, std::move(eigen), s.central);
    if (rank.kind == RankKind::Integer) {
        s.lstar = build_lstar_integer(s.vars, r);
        s.scalars.push_back(delta_of(s.vars, "c0"));
        for (int n = 1; n < r; ++n) s.scalars.push_back(general_lambda(s.vars, r, n, "c0"));
        s.expansion_var = "c" + std::to_string(r);
    } else {
        s.lstar = build_lstar_half(s.vars, r);
        s.expansion_var = "Lambda";
    }
    return s;
}

ModuleVector higher_mode_rhs(const TowerSetup& s, int n, int k, const std::vector<ModuleVector>& v) {
    const int r = s.rank.r;
    ModuleVector zero(s.ctx);
    if (n < r) throw Error(ErrorKind::InternalConsistency, "no higher-mode relation below r");
    const ModuleVector& prev = vec_at(v, k - 1, zero);
    if (s.rank.kind == RankKind::Integer) {
        if (n == r) {
            LaurentPoly c = LaurentPoly(r + 1) * var(s.vars, "Q") - var(s.vars, "c0");
            return c * prev;
        }
        if (n < 2 * r) return (LaurentPoly(-2) * var(s.vars, "c" + std::to_string(n - r))) * prev;
        if (n == 2 * r) return -vec_at(v, k - 2, zero);
        return zero;
    }
    if (n == 2 * r - 1) return prev;
    return zero;
}

ModuleVector apply_lstar_coeff(const TowerSetup& s, const CanonicalOperator& lstar, int i, const ModuleVector& w) {
    ModuleVector out(w.context());
    if (w.is_zero()) return out;
    const auto& row = lstar.coeff[static_cast<std::size_t>(i)];
    for (std::size_t m = 0; m < row.size(); ++m) {
        if (row[m].is_zero()) continue;
        ModuleVector term = apply_mode(static_cast<int>(m), w);
        if (lstar.d_basis) term.add_scaled(w, -s.scalars[m]);
        out.add_scaled(term, row[m]);
    }
    return out;
}

ModuleVector lstar_residual(const TowerSetup& s, const CanonicalOperator& lstar, int k, const std::vector<ModuleVector>& v,
                            const std::vector<LaurentPoly>& g, const LaurentPoly& nu) {
    const int r = s.rank.r;
    ModuleVector zero(s.ctx);
    ModuleVector out(s.ctx);
    for (int i = 0; i <= r - 2; ++i) {
        const ModuleVector& w = vec_at(v, k - i, zero);
        if (w.is_zero()) continue;
        out += apply_lstar_coeff(s, lstar, i, w);
        out.add_scaled(w, LaurentPoly(r - 1 - i) * g[static_cast<std::size_t>(r - 1 - i)]);
    }
    const ModuleVector& w = vec_at(v, k - r + 1, zero);
    if (!w.is_zero()) {
        out += apply_lstar_coeff(s, lstar, r - 1, w);
        out.add_scaled(w, -(nu + LaurentPoly(k - r + 1)));
    }
    return out;
}

IrregularSeries solve_integer(int r, int K, std::optional<LaurentPoly> central) {
    return solve_tower(make_setup(RankSpec{RankKind::Integer, r}, K, std::move(central)));
}

IrregularSeries solve_half(int r, int K, std::optional<LaurentPoly> central) {
    return solve_tower(make_setup(RankSpec{RankKind::Half, r}, K, std::move(central)));
}

IrregularSeries solve_tower(const TowerSetup& setup) {
    const int r = setup.rank.r;
    const int rho = r - 1;
    const int K = setup.K;
    const VarTablePtr& vars = setup.vars;
    IrregularSeries s;
    s.setup = setup;
    s.nu = var(vars, "nu");
    s.g.assign(static_cast<std::size_t>(r), LaurentPoly::constant(vars, Rational(0)));
    for (int j = 1; j < r; ++j) s.g[static_cast<std::size_t>(j)] = var(vars, gname(j));
    for (int j = r - 1; j >= 1; --j) s.ledger.entries.push_back({gname(j), false, {}, -1, ""});
    s.ledger.entries.push_back({"nu", false, {}, -1, ""});
    for (int k = 1; k <= K; ++k) s.ledger.entries.push_back({ename(k), false, {}, -1, ""});

    std::optional<DescendantSolver> ds;
    if (K >= 1) ds.emplace(setup.ctx, r * K);

    auto substitute_all = [&](const std::string& name, const LaurentPoly& value) {
        const std::size_t idx = vars->index(name);
        for (auto& w : s.v) w = substitute_vec(w, idx, value);
        for (auto& w : s.x) w = substitute_vec(w, idx, value);
        for (auto& gj : s.g) gj = substitute(gj, idx, value);
        s.nu = substitute(s.nu, idx, value);
        for (auto& e : s.ledger.entries)
            if (e.solved) e.value = substitute(e.value, idx, value);
    };

    for (int k = 0; k <= K; ++k) {
        ModuleVector vk(setup.ctx);
        if (k == 0) {
            vk = ModuleVector::cyclic(setup.ctx, LaurentPoly::constant(vars, Rational(1)));
        } else {
            std::map<Partition, LaurentPoly> targets;
            visit_tilde_words(
                setup.ctx, r * k, [&](int a) { return higher_mode_rhs(setup, a + rho, k, s.v); },
                [&](const Partition& mu, const ModuleVector& w) {
                    LaurentPoly c = constant_term(w);
                    if (!c.is_zero()) targets[mu] = std::move(c);
                });
            vk = ds->solve(targets, r * k);
            vk.add_term(Partition{}, var(vars, ename(k)));
        }
        s.v.push_back(vk);
        ModuleVector xk = vk;
        for (const auto& name : s.ledger.pending())
            if (name[0] == 'e') xk = substitute_vec(xk, vars->index(name), LaurentPoly(0));
        s.x.push_back(xk);

        ModuleVector z = lstar_residual(setup, setup.lstar, k, s.v, s.g, s.nu);
        LaurentPoly ct = constant_term(z);
        std::string unknown = k < r - 1 ? gname(r - 1 - k) : (k == r - 1 ? "nu" : ename(k - r + 1));
        for (const auto& name : s.ledger.pending())
            if (name != unknown && ct.uses(name))
                throw Error(ErrorKind::NonAffineElimination, "order " + std::to_string(k) + " constant term involves " + name +
                                                                 " besides " + unknown);
        const std::size_t u = vars->index(unknown);
        auto [lo, hi] = ct.degree_range(u);
        if (lo < 0 || hi != 1)
            throw Error(ErrorKind::NonAffineElimination, "order " + std::to_string(k) + " constant term is not affine in " +
                                                             unknown + ": " + ct.to_string());
        LaurentPoly pivot = coeff(ct, u, 1);
        if (!pivot.is_unit())
            throw Error(ErrorKind::NonUnitPivot, "pivot for " + unknown + " is " + pivot.to_string());
        LaurentPoly value = -coeff(ct, u, 0) * pivot.inverse();
        UnknownEntry* entry = s.ledger.find(unknown);
        entry->equation = ct.to_string() + " = 0";
        entry->solved = true;
        entry->value = value;
        entry->order = k;
        substitute_all(unknown, value);
        z = substitute_vec(z, u, value);
        if (!z.is_zero())
            throw Error(ErrorKind::ResidualNonZero, "order " + std::to_string(k) + " residual: " + first_nonzero(z));
        s.residual_zero.push_back(true);
    }
    return s;
}

namespace {

// Row r of the inverse frame by forward substitution along the anti-diagonal.
CanonicalOperator lstar_forward(const TowerSetup& setup) {
    const int r = setup.rank.r;
    const VarTablePtr& vars = setup.vars;
    PolyMatrix m;
    LaurentPoly top;
    if (setup.rank.kind == RankKind::Integer) {
        auto fields = integer_fields(vars, r);
        for (const auto& f : fields.fields) {
            std::vector<LaurentPoly> row;
            for (const auto& c : fields.coords) row.push_back(f.component(c));
            m.push_back(row);
        }
        top = var(vars, "c" + std::to_string(r)).pow(static_cast<unsigned>(r));
    } else {
        auto fields = build_half_fields(vars, r);
        for (const auto& f : fields.fields) {
            std::vector<LaurentPoly> row;
            for (const auto& c : fields.coords) row.push_back(f.component(c));
            m.push_back(row);
        }
        top = var(vars, "Lambda").pow(static_cast<unsigned>(r));
    }
    std::vector<LaurentPoly> x(static_cast<std::size_t>(r));
    for (int j = r - 1; j >= 0; --j) {
        const int i_new = r - 1 - j;
        LaurentPoly rhs(j == r - 1 ? 1 : 0);
        for (int i = 0; i < i_new; ++i) rhs -= x[static_cast<std::size_t>(i)] * m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        const LaurentPoly& pivot = m[static_cast<std::size_t>(i_new)][static_cast<std::size_t>(j)];
        x[static_cast<std::size_t>(i_new)] = rhs * pivot.inverse();
    }
    CanonicalOperator op;
    op.r = r;
    op.kind = setup.rank.kind;
    op.d_basis = setup.rank.kind == RankKind::Integer;
    op.expansion_var = setup.expansion_var;
    op.coeff.assign(static_cast<std::size_t>(r), std::vector<LaurentPoly>(static_cast<std::size_t>(r)));
    const std::size_t tv = vars->index(setup.expansion_var);
    for (int n = 0; n < r; ++n) {
        LaurentPoly full = top * x[static_cast<std::size_t>(n)];
        op.full.push_back(full);
        for (int i = 0; i < r; ++i) op.coeff[static_cast<std::size_t>(i)][static_cast<std::size_t>(n)] = coeff(full, tv, i);
    }
    return op;
}

}  // namespace

bool VerifyReport::all_zero() const {
    return std::all_of(entries.begin(), entries.end(), [](const ResidualEntry& e) { return e.zero; });
}

VerifyReport verify_canonical(const IrregularSeries& series) {
    VerifyReport rep;
    const TowerSetup& old = series.setup;
    TowerSetup fresh = make_setup(old.rank, old.K, old.central, old.vars);
    fresh.lstar = lstar_forward(fresh);
    const int r = fresh.rank.r;
    const int rho = r - 1;
    const int K = fresh.K;
    std::vector<ModuleVector> v;
    for (const auto& w : series.v) v.push_back(rebind(w, fresh.ctx));

    {
        ResidualEntry e{"normalization {v_0} = 1", 0, true, ""};
        if (v.empty() || constant_term(v[0]) != LaurentPoly(1)) {
            e.zero = false;
            e.detail = v.empty() ? "missing v_0" : constant_term(v[0]).to_string();
        }
        rep.entries.push_back(e);
    }
    {
        ResidualEntry e{"support |lambda| <= r k", K, true, ""};
        for (int k = 0; k < static_cast<int>(v.size()); ++k)
            if (v[static_cast<std::size_t>(k)].max_level() > r * k) {
                e.zero = false;
                e.detail = "v_" + std::to_string(k) + " reaches level " + std::to_string(v[static_cast<std::size_t>(k)].max_level());
            }
        rep.entries.push_back(e);
    }
    const int n_max = fresh.rank.kind == RankKind::Integer ? 2 * r + 1 : 2 * r;
    for (int n = r; n <= n_max; ++n) {
        std::string name;
        if (fresh.rank.kind == RankKind::Integer) {
            if (n == r) name = "L~_" + std::to_string(n) + " v_k = ((r+1)Q - c0) v_{k-1}";
            else if (n < 2 * r) name = "L~_" + std::to_string(n) + " v_k = -2 c_" + std::to_string(n - r) + " v_{k-1}";
            else if (n == 2 * r) name = "L_" + std::to_string(n) + " v_k = -v_{k-2}";
            else name = "L_" + std::to_string(n) + " v_k = 0";
        } else {
            if (n <= 2 * r - 2) name = "L~_" + std::to_string(n) + " v_k = 0";
            else if (n == 2 * r - 1) name = "L_" + std::to_string(n) + " v_k = v_{k-1}";
            else name = "L_" + std::to_string(n) + " v_k = 0";
        }
        ResidualEntry e{name, -1, true, ""};
        for (int k = 0; k <= K && k < static_cast<int>(v.size()); ++k) {
            ModuleVector lhs = apply_mode(n, v[static_cast<std::size_t>(k)]);
            if (n <= 2 * rho) lhs.add_scaled(v[static_cast<std::size_t>(k)], -fresh.ctx->eigenvalue(n));
            ModuleVector res = lhs - higher_mode_rhs(fresh, n, k, v);
            e.window = k;
            if (!res.is_zero() && e.zero) {
                e.zero = false;
                e.detail = "order " + std::to_string(k) + ": " + first_nonzero(res);
            }
        }
        rep.entries.push_back(e);
    }
    {
        ResidualEntry e{fresh.rank.kind == RankKind::Integer ? "Z_k = 0 (L* recurrence)" : "Y_k = 0 (L* recurrence)", -1, true, ""};
        for (int k = 0; k <= K && k < static_cast<int>(v.size()); ++k) {
            ModuleVector z = lstar_residual(fresh, fresh.lstar, k, v, series.g, series.nu);
            e.window = k;
            if (!z.is_zero() && e.zero) {
                e.zero = false;
                e.detail = "order " + std::to_string(k) + ": " + first_nonzero(z);
            }
        }
        rep.entries.push_back(e);
    }
    return rep;
}

RationalFunction Rank1Series::coefficient(int k, const Partition& lambda) const {
    return RationalFunction(numer.at(static_cast<std::size_t>(k)).coefficient(lambda), denom.at(static_cast<std::size_t>(k)));
}

namespace {

LaurentPoly cramer_numerator(const PolyMatrix& a, const std::vector<LaurentPoly>& b, std::size_t col) {
    PolyMatrix m = a;
    for (std::size_t i = 0; i < a.size(); ++i) m[i][col] = b[i];
    return det_bareiss(std::move(m));
}

}  // namespace

Rank1Series solve_rank1(const VarTablePtr& vars, const LaurentPoly& delta, const LaurentPoly& central,
                        const LaurentPoly& lambda1, const LaurentPoly& lambda2, int K) {
    if (K < 0) throw Error(ErrorKind::Usage, "order must be >= 0");
    Rank1Series s;
    s.vars = vars;
    s.ctx = ModuleContext::verma(vars, delta, central);
    const std::size_t c1 = vars->index("c1");
    s.alpha = coeff(lambda1, c1, 1);
    s.beta = coeff(lambda2, c1, 2);
    if (s.alpha * var(vars, "c1") != lambda1 || s.beta * var(vars, "c1").pow(2) != lambda2)
        throw Error(ErrorKind::Usage, "rank-1 eigenvalues must be alpha*c1 and beta*c1^2");
    s.numer.push_back(ModuleVector::cyclic(s.ctx, LaurentPoly::constant(vars, Rational(1))));
    s.level_det.push_back(LaurentPoly(1));
    s.denom.push_back(LaurentPoly(1));

    // B[(n,k)] = E_{k-1} L_n v_k, computed from lower orders only.
    std::map<std::pair<int, int>, ModuleVector> B;
    std::function<ModuleVector(int, int)> b_of = [&](int n, int k) -> ModuleVector {
        if (k < 1 || n > k) return ModuleVector(s.ctx);
        auto key = std::make_pair(n, k);
        if (auto it = B.find(key); it != B.end()) return it->second;
        ModuleVector out(s.ctx);
        if (n == 1) {
            out = s.alpha * s.numer[static_cast<std::size_t>(k - 1)];
        } else if (n == 2) {
            out = (s.beta * s.level_det[static_cast<std::size_t>(k - 1)]) * s.numer[static_cast<std::size_t>(k - 2)];
        } else {
            out = (s.alpha * s.level_det[static_cast<std::size_t>(k - 1)]) * b_of(n - 1, k - 1) - apply_mode(1, b_of(n - 1, k));
            out *= LaurentPoly(Rational(1, n - 2));
        }
        B.emplace(key, out);
        return out;
    };

    for (int k = 1; k <= K; ++k) {
        GramBlock g = gram_matrix(s.ctx, k, k);
        LaurentPoly d = det_bareiss(g.entries);
        if (d.is_zero()) throw Error(ErrorKind::SingularShapovalov, "level " + std::to_string(k));
        std::vector<LaurentPoly> rhs(g.size());
        visit_tilde_words(
            s.ctx, k, [&](int a) { return b_of(a, k); },
            [&](const Partition& mu, const ModuleVector& w) {
                if (mu.weight() != k) return;
                auto it = std::find(g.index.begin(), g.index.end(), mu);
                rhs[static_cast<std::size_t>(it - g.index.begin())] = constant_term(w);
            });
        ModuleVector nk(s.ctx);
        for (std::size_t j = 0; j < g.size(); ++j) nk.add_term(g.index[j], cramer_numerator(g.entries, rhs, j));
        s.numer.push_back(nk);
        s.level_det.push_back(d);
        s.denom.push_back(d * s.denom.back());
    }
    return s;
}

VerifyReport verify_rank1(const Rank1Series& s) {
    VerifyReport rep;
    ResidualEntry l1{"L_1 v_k = alpha v_{k-1}", -1, true, ""};
    ResidualEntry l2{"L_2 v_k = beta v_{k-2}", -1, true, ""};
    ResidualEntry l3{"L_n v_k = 0 beyond level (n >= 3, k < n)", -1, true, ""};
    // Fresh context so the memo is not shared with the solve.
    ContextPtr ctx = ModuleContext::verma(s.vars, s.ctx->eigenvalue(0), s.ctx->central());
    for (int k = 0; k <= s.K(); ++k) {
        ModuleVector nk = rebind(s.numer[static_cast<std::size_t>(k)], ctx);
        ModuleVector r1 = apply_mode(1, nk);
        if (k >= 1) r1 -= (s.alpha * s.level_det[static_cast<std::size_t>(k)]) * rebind(s.numer[static_cast<std::size_t>(k - 1)], ctx);
        ModuleVector r2 = apply_mode(2, nk);
        if (k >= 2)
            r2 -= (s.beta * s.level_det[static_cast<std::size_t>(k)] * s.level_det[static_cast<std::size_t>(k - 1)]) *
                  rebind(s.numer[static_cast<std::size_t>(k - 2)], ctx);
        l1.window = l2.window = l3.window = k;
        if (!r1.is_zero() && l1.zero) {
            l1.zero = false;
            l1.detail = "order " + std::to_string(k) + ": " + first_nonzero(r1);
        }
        if (!r2.is_zero() && l2.zero) {
            l2.zero = false;
            l2.detail = "order " + std::to_string(k) + ": " + first_nonzero(r2);
        }
        for (int n = k + 1; n <= k + 2; ++n)
            if (n >= 3 && !apply_mode(n, nk).is_zero()) l3.zero = false;
    }
    rep.entries = {l1, l2, l3};
    return rep;
}

}  // namespace irrvir
