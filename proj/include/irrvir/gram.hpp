#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "irrvir/linalg.hpp"
#include "irrvir/virasoro.hpp"

namespace irrvir {

/// Visits every nonempty partition mu with |mu| <= max_weight in depth-first
/// order, together with L~_mu v. `first(a)` must return L~_{a+rho} v for the
/// innermost (largest) part a; later parts are applied with apply_tilde.
/// Branches whose vector vanishes are pruned (their entries are zero).
void visit_tilde_words(const ContextPtr& ctx, int max_weight, const std::function<ModuleVector(int)>& first,
                       const std::function<void(const Partition&, const ModuleVector&)>& visit);

/// Square block of constant terms {L~_mu L_{-lambda} cyclic} for
/// lo <= |mu|, |lambda| <= hi, rows and columns in block order.
struct GramBlock {
    ContextPtr ctx;
    int lo = 0;
    int hi = 0;
    std::vector<Partition> index;
    PolyMatrix entries;  // entries[row mu][column lambda]

    std::size_t size() const noexcept { return index.size(); }
    /// Zero below the diagonal in block order.
    bool upper_triangular() const;
};

GramBlock gram_matrix(const ContextPtr& ctx, int lo, int hi);

struct GramDetReport {
    LaurentPoly det;
    LaurentPoly expected;        // eigenvalue(2 rho)^{sum i p(i)}
    int expected_exponent = 0;   // sum_{i=lo}^{hi} i p(i)
    Rational ratio;              // det / expected when proportional, else 0
    bool proportional = false;
    std::optional<int> observed_exponent;  // k with det = q * eigenvalue(2 rho)^k
    Rational observed_ratio;               // that q
};

/// Computes the determinant and compares it with the expected monomial power.
/// Never throws on a mismatch; see require_proportional.
GramDetReport gram_det_report(const ContextPtr& ctx, int lo, int hi);
/// gram_det_report, throwing ProportionalityFailure when det is not a
/// rational multiple of the expected power.
GramDetReport gram_det_verify(const ContextPtr& ctx, int lo, int hi);

/// Solves {L~_mu v} = targets[mu] for v = sum c_lambda L_{-lambda} cyclic with
/// 1 <= |lambda| <= N, using a cached Gram block 1..N_max.
class DescendantSolver {
public:
    DescendantSolver(ContextPtr ctx, int max_level);

    const ContextPtr& context() const noexcept { return ctx_; }
    int max_level() const noexcept { return block_.hi; }
    const GramBlock& block() const noexcept { return block_; }

    /// targets are indexed like partitions_between(1, N); missing entries are zero.
    ModuleVector solve(const std::map<Partition, LaurentPoly>& targets, int N) const;

private:
    ContextPtr ctx_;
    GramBlock block_;
    bool triangular_ = false;
};

ModuleVector solve_descendants(const ContextPtr& ctx, const std::map<Partition, LaurentPoly>& targets, int N);

}  // namespace irrvir
