#pragma once

#include <optional>
#include <string>
#include <vector>

#include "irrvir/frames.hpp"
#include "irrvir/gram.hpp"
#include "irrvir/rational_function.hpp"
#include "irrvir/virasoro.hpp"

namespace irrvir {

/// Integer rank r, or half-integer rank r - 1/2 (stored as r).
struct RankSpec {
    RankKind kind = RankKind::Integer;
    int r = 2;

    /// Parses "3" or "5/2"; throws Usage.
    static RankSpec parse(const std::string& text);
    std::string to_string() const;
};

struct UnknownEntry {
    std::string name;            // g<j>, nu, e<k> (constant term of v_k)
    bool solved = false;
    LaurentPoly value;
    int order = -1;              // recurrence order that pinned it
    std::string equation;        // constant-term equation before solving
};

struct UnknownLedger {
    std::vector<UnknownEntry> entries;  // in elimination order

    const UnknownEntry* find(const std::string& name) const;
    UnknownEntry* find(const std::string& name);
    std::vector<std::string> pending() const;
};

/// Data shared by a solver run: variable table, base module, L* and the
/// eigenvalue tables.
struct TowerSetup {
    RankSpec rank;
    int K = 0;
    VarTablePtr vars;
    ContextPtr ctx;               // rank r-1 base module
    CanonicalOperator lstar;
    std::vector<LaurentPoly> scalars;  // D-basis scalar parts s_0..s_{r-1} (integer kind)
    std::string expansion_var;         // c<r> or Lambda
    LaurentPoly central;
};

/// Variable table for a tower run: standard roster plus g1..g_{r-1}, nu, e1..eK.
VarTablePtr tower_table(const RankSpec& rank, int K);
TowerSetup make_setup(const RankSpec& rank, int K, std::optional<LaurentPoly> central = std::nullopt,
                      VarTablePtr vars = nullptr);

struct IrregularSeries {
    TowerSetup setup;
    LaurentPoly nu;                 // symbol "nu" while pending
    std::vector<LaurentPoly> g;     // g[j] for j = 1..r-1 (g[0] unused)
    std::vector<ModuleVector> v;    // v_0..v_K
    std::vector<ModuleVector> x;    // X_k: v_k with pending constant terms dropped
    UnknownLedger ledger;
    std::vector<bool> residual_zero;  // Z_k / Y_k per order, as checked by the solver

    const RankSpec& rank() const noexcept { return setup.rank; }
    int K() const noexcept { return setup.K; }
    const VarTablePtr& vars() const noexcept { return setup.vars; }
};

/// Higher-mode relation value: the right-hand side of L~_n v_k for n = a + rho,
/// as a combination of lower vectors (zero when no relation applies).
ModuleVector higher_mode_rhs(const TowerSetup& setup, int n, int k, const std::vector<ModuleVector>& v);
/// f_i applied to w (D-basis with scalars for the integer kind, plain modes for the half kind).
ModuleVector apply_lstar_coeff(const TowerSetup& setup, const CanonicalOperator& lstar, int i, const ModuleVector& w);
/// Left side of the L* recurrence at order k.
ModuleVector lstar_residual(const TowerSetup& setup, const CanonicalOperator& lstar, int k,
                            const std::vector<ModuleVector>& v, const std::vector<LaurentPoly>& g, const LaurentPoly& nu);

IrregularSeries solve_integer(int r, int K, std::optional<LaurentPoly> central = std::nullopt);
IrregularSeries solve_half(int r, int K, std::optional<LaurentPoly> central = std::nullopt);
IrregularSeries solve_tower(const TowerSetup& setup);

struct ResidualEntry {
    std::string relation;
    int window = -1;     // highest order checked
    bool zero = true;
    std::string detail;  // first nonzero residual, if any
};

struct VerifyReport {
    std::vector<ResidualEntry> entries;
    bool all_zero() const;
};

/// Independent re-derivation of every defining relation: fresh module context,
/// L* rebuilt by forward substitution on the anti-triangular frame.
VerifyReport verify_canonical(const IrregularSeries& series);

/// Rank-1 vector in the Verma module: v_k = N_k / E_k with E_k the product of
/// the Shapovalov determinants of levels 1..k.
struct Rank1Series {
    VarTablePtr vars;
    ContextPtr ctx;
    LaurentPoly alpha;  // L_1 v_k = alpha v_{k-1}
    LaurentPoly beta;   // L_2 v_k = beta v_{k-2}
    std::vector<ModuleVector> numer;
    std::vector<LaurentPoly> level_det;  // d_k, d_0 = 1
    std::vector<LaurentPoly> denom;      // E_k

    int K() const noexcept { return static_cast<int>(numer.size()) - 1; }
    RationalFunction coefficient(int k, const Partition& lambda) const;
};

/// Lambda1 and Lambda2 must be alpha*c1 and beta*c1^2.
Rank1Series solve_rank1(const VarTablePtr& vars, const LaurentPoly& delta, const LaurentPoly& central,
                        const LaurentPoly& lambda1, const LaurentPoly& lambda2, int K);
/// Forward check of L_1 and L_2 relations for every order; returns the residual report.
VerifyReport verify_rank1(const Rank1Series& s);

}  // namespace irrvir
