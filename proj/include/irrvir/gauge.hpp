#pragma once

#include <optional>
#include <string>
#include <vector>

#include "irrvir/frames.hpp"
#include "irrvir/solver.hpp"
#include "irrvir/truncated_series.hpp"

namespace irrvir {

/// sum_k t^k coeffs[k - low], known through `high`.
struct VectorSeries {
    int low = 0;
    int high = 0;
    std::vector<ModuleVector> coeffs;

    ModuleVector at(int k, const ContextPtr& ctx) const;
    TruncatedSeries constant_terms(const std::string& var) const;
};

/// Scalar parts sigma_0..sigma_{r-1} completing the half-integer vector fields.
struct ScalarCompletion {
    int r = 0;
    int bound = 0;
    std::vector<LaurentPoly> sigma;
    LaurentPoly gauge_certificate;  // sum_i (M^-1)_{r,i+1} sigma_i
    std::size_t unknowns = 0;
    std::size_t support = 0;
    std::vector<ResidualEntry> checks;
};

struct ObstructionSet {
    RankSpec rank;
    VarTablePtr vars;
    std::string var;                  // expansion variable
    VectorFieldSet fields;            // D_i or V_i
    std::vector<LaurentPoly> scalars;  // scalar part of the lower operator i
    TruncatedSeries theta;            // {W}
    std::vector<TruncatedSeries> a;   // a_0..a_{r-1}
    std::vector<VectorSeries> rw;     // R_i W with the prefactor stripped
    std::vector<ResidualEntry> checks;
    std::vector<std::string> pending;  // unsolved constant terms
};

struct PotentialDecomposition {
    LaurentPoly g0;
    std::vector<LaurentPoly> nu;         // nu[j], j = 1..r-1 (nu[0] unused)
    std::vector<LaurentPoly> one_form;   // dh/dc_k, k = 1..r-1 (index k-1)
    std::vector<std::string> passive;    // arguments of the free constant slot
    int window = 0;                      // highest order at which t-independence was checked
};

/// Passive parameters: Q, c0p, c0 for the integer kind; Q, c0 for the half kind.
std::vector<std::string> passive_variables(const RankSpec& rank);

ScalarCompletion scalar_completion_half(const VarTablePtr& vars, int r, int bound);
/// Tries bounds 1..max_bound in turn; throws Infeasible with the last bound.
ScalarCompletion scalar_completion_search(const VarTablePtr& vars, int r, int max_bound);

ObstructionSet obstructions(const IrregularSeries& series, const std::optional<ScalarCompletion>& completion = std::nullopt);
VerifyReport frobenius_verify(const ObstructionSet& obs);
PotentialDecomposition integrate_potential(const ObstructionSet& obs, const FrameMatrix& frame);
VerifyReport apply_gauge_and_verify(const IrregularSeries& series, const ObstructionSet& obs, const PotentialDecomposition& decomp);

/// The frame matching the series kind.
FrameMatrix frame_for(const RankSpec& rank, const VarTablePtr& vars);
/// Expands a Laurent polynomial in var as an exact series.
TruncatedSeries series_from_poly(const LaurentPoly& p, const std::string& var);

}  // namespace irrvir
