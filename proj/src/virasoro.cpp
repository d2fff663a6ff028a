#include "irrvir/virasoro.hpp"

#include <sstream>

namespace irrvir {

namespace {

void accumulate(Combination& acc, const Partition& lam, const LaurentPoly& c) {
    if (c.is_zero()) return;
    auto it = acc.find(lam);
    if (it == acc.end()) {
        acc.emplace(lam, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) acc.erase(it);
}

void accumulate_scaled(Combination& acc, const Combination& x, const LaurentPoly& c) {
    if (c.is_zero()) return;
    for (const auto& [lam, v] : x) accumulate(acc, lam, v * c);
}

}  // namespace

ModuleContext::ModuleContext(VarTablePtr vars, int rho, std::vector<LaurentPoly> eigen, LaurentPoly central)
    : vars_(std::move(vars)), rho_(rho), eigen_(std::move(eigen)), central_(std::move(central)),
      zero_(LaurentPoly::constant(vars_, Rational(0))) {
    if (rho_ < 0) throw Error(ErrorKind::InternalConsistency, "negative module rank");
    if (static_cast<int>(eigen_.size()) != rho_ + 1)
        throw Error(ErrorKind::InternalConsistency, "eigenvalue table must have rho+1 entries");
}

std::shared_ptr<const ModuleContext> ModuleContext::irregular(VarTablePtr vars, int rho, std::vector<LaurentPoly> eigen,
                                                              LaurentPoly central) {
    if (rho < 1) throw Error(ErrorKind::InternalConsistency, "irregular module needs rho >= 1");
    return std::shared_ptr<const ModuleContext>(new ModuleContext(std::move(vars), rho, std::move(eigen), std::move(central)));
}

std::shared_ptr<const ModuleContext> ModuleContext::verma(VarTablePtr vars, LaurentPoly delta, LaurentPoly central) {
    return std::shared_ptr<const ModuleContext>(new ModuleContext(std::move(vars), 0, {std::move(delta)}, std::move(central)));
}

const LaurentPoly& ModuleContext::eigenvalue(int n) const {
    if (n < rho_) throw Error(ErrorKind::InternalConsistency, "eigenvalue requested for a creation mode");
    if (n > 2 * rho_) return zero_;
    return eigen_[static_cast<std::size_t>(n - rho_)];
}

std::size_t ModuleContext::memo_size() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return memo_.size();
}

const Combination& ModuleContext::mode_on_basis(int n, const Partition& lambda) const {
    auto key = std::make_pair(n, lambda);
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
    }
    Combination value = compute(n, lambda);
    std::lock_guard<std::mutex> lock(mutex_);
    return memo_.emplace(std::move(key), std::move(value)).first->second;
}

Combination ModuleContext::compute(int n, const Partition& lambda) const {
    Combination out;
    if (lambda.empty()) {
        if (n >= rho_) accumulate(out, lambda, eigenvalue(n));
        else out.emplace(Partition({rho_ - n}), LaurentPoly::constant(vars_, Rational(1)));
        return out;
    }
    const int m1 = rho_ - lambda[0];
    if (n <= m1) {
        out.emplace(lambda.prepended(rho_ - n), LaurentPoly::constant(vars_, Rational(1)));
        return out;
    }
    // L_n L_{m1} R = L_{m1} L_n R + (n - m1) L_{n+m1} R + central term.
    const Partition rest = lambda.tail();
    const Combination& inner = mode_on_basis(n, rest);
    for (const auto& [mu, c] : inner) accumulate_scaled(out, mode_on_basis(m1, mu), c);
    accumulate_scaled(out, mode_on_basis(n + m1, rest), LaurentPoly(n - m1));
    if (n + m1 == 0) {
        Rational k(static_cast<long>(n) * n * n - n, 12);
        k.canonicalize();
        accumulate(out, rest, central_ * k);
    }
    return out;
}

ModuleVector::ModuleVector(ContextPtr ctx, Combination terms) : ctx_(std::move(ctx)) {
    for (auto& [lam, c] : terms)
        if (!c.is_zero()) terms_.emplace(lam, std::move(c));
}

ModuleVector ModuleVector::cyclic(ContextPtr ctx, const LaurentPoly& coeff) { return basis(std::move(ctx), Partition{}, coeff); }

ModuleVector ModuleVector::basis(ContextPtr ctx, const Partition& lambda, const LaurentPoly& coeff) {
    ModuleVector v(std::move(ctx));
    v.add_term(lambda, coeff);
    return v;
}

LaurentPoly ModuleVector::coefficient(const Partition& lambda) const {
    auto it = terms_.find(lambda);
    return it == terms_.end() ? LaurentPoly(0) : it->second;
}

int ModuleVector::max_level() const noexcept { return terms_.empty() ? -1 : terms_.rbegin()->first.weight(); }

ModuleVector ModuleVector::operator-() const {
    ModuleVector r = *this;
    for (auto& [lam, c] : r.terms_) c = -c;
    return r;
}

ModuleVector& ModuleVector::operator+=(const ModuleVector& o) {
    if (!ctx_) ctx_ = o.ctx_;
    for (const auto& [lam, c] : o.terms_) accumulate(terms_, lam, c);
    return *this;
}

ModuleVector& ModuleVector::operator-=(const ModuleVector& o) {
    if (!ctx_) ctx_ = o.ctx_;
    for (const auto& [lam, c] : o.terms_) accumulate(terms_, lam, -c);
    return *this;
}

ModuleVector& ModuleVector::operator*=(const LaurentPoly& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [lam, v] : terms_) v *= c;
    return *this;
}

void ModuleVector::add_scaled(const ModuleVector& v, const LaurentPoly& c) {
    if (!ctx_) ctx_ = v.ctx_;
    accumulate_scaled(terms_, v.terms_, c);
}

void ModuleVector::add_term(const Partition& lambda, const LaurentPoly& c) { accumulate(terms_, lambda, c); }

std::string ModuleVector::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [lam, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "[" << c.to_string() << "]" << (lam.empty() ? std::string("|I>") : "L" + lam.to_string() + "|I>");
    }
    return os.str();
}

ModuleVector apply_mode(int n, const ModuleVector& v) {
    const ContextPtr& ctx = v.context();
    ModuleVector out(ctx);
    if (!ctx) return out;
    Combination acc;
    for (const auto& [lam, c] : v.terms()) accumulate_scaled(acc, ctx->mode_on_basis(n, lam), c);
    return ModuleVector(ctx, std::move(acc));
}

ModuleVector apply_tilde(int n, const ModuleVector& v) {
    ModuleVector out = apply_mode(n, v);
    if (v.context() && n >= v.context()->rho()) out.add_scaled(v, -v.context()->eigenvalue(n));
    return out;
}

ModuleVector apply_tilde_word(const Partition& mu, const ModuleVector& v) {
    ModuleVector w = v;
    if (!v.context()) return w;
    const int rho = v.context()->rho();
    for (std::size_t i = 0; i < mu.length() && !w.is_zero(); ++i) w = apply_tilde(mu[i] + rho, w);
    return w;
}

ModuleVector apply_word(const std::vector<int>& modes, const ModuleVector& v) {
    ModuleVector w = v;
    for (auto it = modes.rbegin(); it != modes.rend() && !w.is_zero(); ++it) w = apply_mode(*it, w);
    return w;
}

LaurentPoly constant_term(const ModuleVector& v) { return v.coefficient(Partition{}); }

LaurentPoly delta_of(const VarTablePtr& vars, std::string_view c0name) {
    LaurentPoly c0 = LaurentPoly::variable(vars, c0name);
    return c0 * (LaurentPoly::variable(vars, "Q") - c0);
}

LaurentPoly general_lambda(const VarTablePtr& vars, int top, int n, std::string_view c0name) {
    auto c = [&](int j) {
        if (j < 1 || j > top) return LaurentPoly::constant(vars, Rational(0));
        return LaurentPoly::variable(vars, "c" + std::to_string(j));
    };
    LaurentPoly q = LaurentPoly::variable(vars, "Q");
    LaurentPoly out = (LaurentPoly(n + 1) * q - LaurentPoly::variable(vars, c0name)) * c(n);
    for (int k = 1; k < n; ++k) out -= c(k) * c(n - k);
    return out;
}

std::vector<LaurentPoly> lambda_table(const VarTablePtr& vars, int r, Convention conv) {
    std::vector<LaurentPoly> out;
    for (int n = 1; n <= 2 * r; ++n) out.push_back(general_lambda(vars, r, n));
    if (conv == Convention::General) return out;
    if (r != 1 && r != 2)
        throw Error(ErrorKind::Usage, "the section2-display convention is only defined for rank 1 and 2");
    LaurentPoly q = LaurentPoly::variable(vars, "Q"), c0 = LaurentPoly::variable(vars, "c0"),
                c1 = LaurentPoly::variable(vars, "c1");
    out[0] = LaurentPoly(2) * (q - c0) * c1;
    if (r == 2) {
        LaurentPoly c2 = LaurentPoly::variable(vars, "c2");
        out[1] = -c1 * c1 + c2 * (LaurentPoly(3) * q - LaurentPoly(2) * c0);
    }
    return out;
}

LaurentPoly default_central(const VarTablePtr& vars) {
    LaurentPoly q = LaurentPoly::variable(vars, "Q");
    return LaurentPoly::constant(vars, Rational(1)) + LaurentPoly(6) * q * q;
}

}  // namespace irrvir
