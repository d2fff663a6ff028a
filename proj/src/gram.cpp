#include "irrvir/gram.hpp"

#include <algorithm>

namespace irrvir {

namespace {

void descend(const ContextPtr& ctx, int budget, Partition mu, const ModuleVector& v,
             const std::function<void(const Partition&, const ModuleVector&)>& visit) {
    visit(mu, v);
    const int rho = ctx->rho();
    const int last = mu.parts().back();
    for (int a = std::min(last, budget); a >= 1; --a) {
        ModuleVector w = apply_tilde(a + rho, v);
        if (w.is_zero()) continue;
        std::vector<int> parts = mu.parts();
        parts.push_back(a);
        descend(ctx, budget - a, Partition(parts), w, visit);
    }
}

std::size_t position(const std::vector<Partition>& index, const Partition& p) {
    auto it = std::lower_bound(index.begin(), index.end(), p);
    if (it == index.end() || !(*it == p)) throw Error(ErrorKind::InternalConsistency, "partition outside block");
    return static_cast<std::size_t>(it - index.begin());
}

}  // namespace

void visit_tilde_words(const ContextPtr& ctx, int max_weight, const std::function<ModuleVector(int)>& first,
                       const std::function<void(const Partition&, const ModuleVector&)>& visit) {
    for (int a = max_weight; a >= 1; --a) {
        ModuleVector v = first(a);
        if (v.is_zero()) continue;
        descend(ctx, max_weight - a, Partition({a}), v, visit);
    }
}

bool GramBlock::upper_triangular() const {
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (!entries[i][j].is_zero()) return false;
    return true;
}

GramBlock gram_matrix(const ContextPtr& ctx, int lo, int hi) {
    if (lo < 0 || lo > hi) throw Error(ErrorKind::Usage, "gram block needs 0 <= n <= m");
    GramBlock g;
    g.ctx = ctx;
    g.lo = lo;
    g.hi = hi;
    g.index = partitions_between(lo, hi);
    g.entries = zero_matrix(g.size(), g.size());
    const bool has_empty = lo == 0;
    for (std::size_t col = 0; col < g.size(); ++col) {
        const Partition& lam = g.index[col];
        ModuleVector start = ModuleVector::basis(ctx, lam);
        if (has_empty) g.entries[0][col] = constant_term(start);
        visit_tilde_words(
            ctx, hi, [&](int a) { return apply_tilde(a + ctx->rho(), start); },
            [&](const Partition& mu, const ModuleVector& v) {
                if (mu.weight() < lo) return;
                LaurentPoly c = constant_term(v);
                if (!c.is_zero()) g.entries[position(g.index, mu)][col] = std::move(c);
            });
    }
    return g;
}

GramDetReport gram_det_report(const ContextPtr& ctx, int lo, int hi) {
    GramBlock g = gram_matrix(ctx, lo, hi);
    GramDetReport rep;
    rep.det = det_bareiss(g.entries);
    for (int i = std::max(lo, 1); i <= hi; ++i) rep.expected_exponent += i * static_cast<int>(partition_count(i));
    const LaurentPoly& top = ctx->eigenvalue(2 * ctx->rho());
    rep.expected = top.pow(static_cast<unsigned>(rep.expected_exponent));
    rep.ratio = 0;
    if (rep.det.is_zero()) return rep;
    if (rep.det.is_unit() && rep.expected.is_unit() && rep.det.leading_term().mono == rep.expected.leading_term().mono) {
        rep.ratio = rep.det.leading_term().coeff / rep.expected.leading_term().coeff;
        rep.proportional = true;
    }
    if (rep.det.is_unit() && top.is_unit()) {
        const Monomial& dm = rep.det.leading_term().mono;
        const Monomial& tm = top.leading_term().mono;
        if (tm.is_one()) {
            if (dm.is_one()) {
                rep.observed_exponent = 0;
                rep.observed_ratio = rep.det.leading_term().coeff;
            }
        } else {
            std::optional<int> k;
            bool ok = true;
            for (std::size_t v = 0; v < kMaxVars && ok; ++v) {
                if (tm.e[v] == 0) {
                    ok = dm.e[v] == 0;
                    continue;
                }
                if (dm.e[v] % tm.e[v] != 0) ok = false;
                else if (!k) k = dm.e[v] / tm.e[v];
                else ok = *k == dm.e[v] / tm.e[v];
            }
            if (ok && k && *k >= 0) {
                rep.observed_exponent = *k;
                rep.observed_ratio = rep.det.leading_term().coeff / top.pow(static_cast<unsigned>(*k)).leading_term().coeff;
            }
        }
    }
    return rep;
}

GramDetReport gram_det_verify(const ContextPtr& ctx, int lo, int hi) {
    GramDetReport rep = gram_det_report(ctx, lo, hi);
    if (!rep.proportional) {
        std::string what = "block " + std::to_string(lo) + ".." + std::to_string(hi) + ": det = " + rep.det.to_string() +
                           ", expected a rational multiple of " + rep.expected.to_string();
        if (rep.observed_exponent)
            what += " (observed exponent " + std::to_string(*rep.observed_exponent) + ", ratio " +
                    to_string(rep.observed_ratio) + ")";
        throw Error(ErrorKind::ProportionalityFailure, what);
    }
    return rep;
}

DescendantSolver::DescendantSolver(ContextPtr ctx, int max_level) : ctx_(std::move(ctx)) {
    block_ = gram_matrix(ctx_, 1, std::max(max_level, 1));
    triangular_ = block_.upper_triangular();
    if (triangular_)
        for (std::size_t i = 0; i < block_.size(); ++i)
            if (!block_.entries[i][i].is_unit()) triangular_ = false;
}

ModuleVector DescendantSolver::solve(const std::map<Partition, LaurentPoly>& targets, int N) const {
    if (N > block_.hi) throw Error(ErrorKind::InternalConsistency, "descendant level beyond cached Gram block");
    ModuleVector out(ctx_);
    if (N < 1) return out;
    std::size_t n = 0;
    while (n < block_.size() && block_.index[n].weight() <= N) ++n;
    std::vector<LaurentPoly> rhs(n);
    for (const auto& [mu, t] : targets) {
        if (mu.empty() || mu.weight() > N) {
            if (!t.is_zero() && !mu.empty()) throw Error(ErrorKind::InternalConsistency, "target beyond level N");
            continue;
        }
        rhs[position(block_.index, mu)] = t;
    }
    std::vector<LaurentPoly> x(n);
    if (triangular_) {
        // Column-oriented back substitution; every pivot is a unit monomial.
        for (std::size_t j = n; j-- > 0;) {
            if (rhs[j].is_zero()) continue;
            x[j] = rhs[j] * block_.entries[j][j].inverse();
            for (std::size_t i = 0; i < j; ++i)
                if (!block_.entries[i][j].is_zero()) rhs[i] -= block_.entries[i][j] * x[j];
        }
    } else {
        PolyMatrix a = zero_matrix(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) a[i][j] = block_.entries[i][j];
        x = solve_cramer(a, rhs);
    }
    for (std::size_t j = 0; j < n; ++j) out.add_term(block_.index[j], x[j]);
    return out;
}

ModuleVector solve_descendants(const ContextPtr& ctx, const std::map<Partition, LaurentPoly>& targets, int N) {
    return DescendantSolver(ctx, N).solve(targets, N);
}

}  // namespace irrvir
