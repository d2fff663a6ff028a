#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "irrvir/laurent_poly.hpp"
#include "irrvir/partition.hpp"

namespace irrvir {

/// Sparse combination sum_lambda coeff_lambda L_{-lambda}|cyclic>.
using Combination = std::map<Partition, LaurentPoly>;

/// An irregular Verma module of rank rho >= 1, or the ordinary Verma module
/// (rho = 0, eigenvalue table {Delta}).
///
/// The PBW monomial for a partition lambda is L_{rho-lambda_1} ... L_{rho-lambda_l}
/// applied to the cyclic vector, most negative mode leftmost. Modes n >= rho
/// act on the cyclic vector by eigenvalue(n), which vanishes beyond 2 rho.
class ModuleContext {
public:
    /// eigen[i] is the eigenvalue of L_{rho+i}, i = 0..rho.
    static std::shared_ptr<const ModuleContext> irregular(VarTablePtr vars, int rho, std::vector<LaurentPoly> eigen,
                                                          LaurentPoly central);
    static std::shared_ptr<const ModuleContext> verma(VarTablePtr vars, LaurentPoly delta, LaurentPoly central);

    int rho() const noexcept { return rho_; }
    bool is_verma() const noexcept { return rho_ == 0; }
    const VarTablePtr& vars() const noexcept { return vars_; }
    const LaurentPoly& central() const noexcept { return central_; }
    /// Eigenvalue of L_n on the cyclic vector (n >= rho); zero beyond 2 rho.
    const LaurentPoly& eigenvalue(int n) const;

    /// Normal form of L_n L_{-lambda}|cyclic>. Memoized; thread safe.
    const Combination& mode_on_basis(int n, const Partition& lambda) const;

    std::size_t memo_size() const;

private:
    ModuleContext(VarTablePtr vars, int rho, std::vector<LaurentPoly> eigen, LaurentPoly central);
    Combination compute(int n, const Partition& lambda) const;

    VarTablePtr vars_;
    int rho_;
    std::vector<LaurentPoly> eigen_;
    LaurentPoly central_;
    LaurentPoly zero_;

    mutable std::mutex mutex_;
    mutable std::map<std::pair<int, Partition>, Combination> memo_;
};

using ContextPtr = std::shared_ptr<const ModuleContext>;

/// Element of a module: finitely supported, no zero coefficients.
class ModuleVector {
public:
    ModuleVector() = default;
    explicit ModuleVector(ContextPtr ctx) : ctx_(std::move(ctx)) {}
    ModuleVector(ContextPtr ctx, Combination terms);

    static ModuleVector cyclic(ContextPtr ctx, const LaurentPoly& coeff = LaurentPoly(1));
    static ModuleVector basis(ContextPtr ctx, const Partition& lambda, const LaurentPoly& coeff = LaurentPoly(1));

    const ContextPtr& context() const noexcept { return ctx_; }
    const Combination& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }
    LaurentPoly coefficient(const Partition& lambda) const;
    /// Highest partition weight present (-1 for zero).
    int max_level() const noexcept;

    ModuleVector operator-() const;
    ModuleVector& operator+=(const ModuleVector& o);
    ModuleVector& operator-=(const ModuleVector& o);
    ModuleVector& operator*=(const LaurentPoly& c);
    friend ModuleVector operator+(ModuleVector a, const ModuleVector& b) { return a += b; }
    friend ModuleVector operator-(ModuleVector a, const ModuleVector& b) { return a -= b; }
    friend ModuleVector operator*(const LaurentPoly& c, ModuleVector a) { return a *= c; }
    friend ModuleVector operator*(ModuleVector a, const LaurentPoly& c) { return a *= c; }
    /// this += c * v.
    void add_scaled(const ModuleVector& v, const LaurentPoly& c);
    void add_term(const Partition& lambda, const LaurentPoly& c);

    template <class F>
    ModuleVector map(F&& f) const {
        ModuleVector out(ctx_);
        for (const auto& [lam, c] : terms_) out.add_term(lam, f(c));
        return out;
    }

    friend bool operator==(const ModuleVector& a, const ModuleVector& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const ModuleVector& a, const ModuleVector& b) { return !(a == b); }

    std::string to_string() const;

private:
    ContextPtr ctx_;
    Combination terms_;
};

inline std::ostream& operator<<(std::ostream& os, const ModuleVector& v) { return os << v.to_string(); }

/// PBW normal form of L_n v.
ModuleVector apply_mode(int n, const ModuleVector& v);
/// (L_n - eigenvalue(n)) v for n >= rho; plain L_n otherwise.
ModuleVector apply_tilde(int n, const ModuleVector& v);
/// L~_{mu_l+rho} ... L~_{mu_1+rho} v; the factor with mu_1 acts first.
ModuleVector apply_tilde_word(const Partition& mu, const ModuleVector& v);
/// L_{m_1} ... L_{m_k} v with m_k acting first.
ModuleVector apply_word(const std::vector<int>& modes, const ModuleVector& v);
/// Coefficient of the cyclic vector.
LaurentPoly constant_term(const ModuleVector& v);

/// Delta_{c0} = c0 (Q - c0) for the variable named c0name.
LaurentPoly delta_of(const VarTablePtr& vars, std::string_view c0name);
/// Lambda_n = ((n+1)Q - c0)c_n - sum_{k=1}^{n-1} c_k c_{n-k}, with c_j = 0 for
/// j > top. c0name selects c0 or c0p.
LaurentPoly general_lambda(const VarTablePtr& vars, int top, int n, std::string_view c0name = "c0");

enum class Convention { General, Section2Display };
/// Lambda_1..Lambda_{2r} (index n-1). The display convention is only stated for
/// r = 1, 2: Lambda_1 = 2(Q-c0)c1, Lambda_2 = -c1^2 + c2(3Q-2c0).
std::vector<LaurentPoly> lambda_table(const VarTablePtr& vars, int r, Convention conv);
/// c = 1 + 6 Q^2.
LaurentPoly default_central(const VarTablePtr& vars);

}  // namespace irrvir
