#pragma once

#include <map>
#include <string>
#include <vector>

#include "irrvir/linalg.hpp"

namespace irrvir {

enum class RankKind { Integer, Half };

/// First-order differential operator sum_k comp[k] d/d(coord k) on LaurentPoly.
struct VectorField {
    std::map<std::string, LaurentPoly> comps;

    LaurentPoly operator()(const LaurentPoly& f) const;
    LaurentPoly component(const std::string& coord) const;
    friend bool operator==(const VectorField& a, const VectorField& b);
};

VectorField bracket(const VectorField& x, const VectorField& y);
VectorField operator+(const VectorField& a, const VectorField& b);
VectorField operator*(const LaurentPoly& c, const VectorField& x);

struct FrameMatrix {
    int r = 0;
    RankKind kind = RankKind::Integer;
    std::vector<std::string> coords;  // column coordinates
    PolyMatrix m;                     // row n is the field with index n
    LaurentPoly det;
    PolyMatrix inverse;
};

struct VectorFieldSet {
    int r = 0;
    RankKind kind = RankKind::Integer;
    std::vector<std::string> coords;
    std::vector<VectorField> fields;  // index 0..r-1
};

/// L* = sum_i t^i sum_m coeff[i][m] G_m with G_m = D_m (integer kind) or L_m (half kind).
struct CanonicalOperator {
    int r = 0;
    RankKind kind = RankKind::Integer;
    bool d_basis = true;
    std::string expansion_var;
    std::vector<std::vector<LaurentPoly>> coeff;  // [i][m], i, m = 0..r-1
    /// Coefficient of G_m in L* before expansion in t.
    std::vector<LaurentPoly> full;
};

/// a_0..a_{count-1} with 1/(c_r + c_{r-1} z + ... + c_1 z^{r-1}) = sum a_j z^j.
std::vector<LaurentPoly> series_inverse_coeffs(const VarTablePtr& vars, int r, int count);

/// D_n = sum_{k=1}^{r-n} k c_{n+k} d/dc_k for n = 0..r-1.
VectorFieldSet integer_fields(const VarTablePtr& vars, int r);
FrameMatrix build_frame_integer(const VarTablePtr& vars, int r);
CanonicalOperator build_lstar_integer(const VarTablePtr& vars, int r);
/// ((-1)^{r-1}/r) c_{r-1}^{r-1}.
LaurentPoly leading_integer_coefficient(const VarTablePtr& vars, int r);

/// S_m = -sum c_a c_{m-a} over 1 <= a, m-a <= r-1 for r <= m <= 2r-2,
/// S_{2r-1} = Lambda, zero above 2r-1.
LaurentPoly half_scalar(const VarTablePtr& vars, int r, int m);
VectorFieldSet build_half_fields(const VarTablePtr& vars, int r);
Rational half_kappa(int r);
FrameMatrix build_frame_half(const VarTablePtr& vars, int r);
CanonicalOperator build_lstar_half(const VarTablePtr& vars, int r);
/// rho_r with f_0 = rho_r c_{r-1}^{2r-2} L_{r-1}; throws if f_0 has another shape.
Rational leading_half_ratio(const CanonicalOperator& lstar, const VarTablePtr& vars);

}  // namespace irrvir
