#pragma once

#include <vector>

#include "irrvir/laurent_poly.hpp"

namespace irrvir {

using PolyMatrix = std::vector<std::vector<LaurentPoly>>;

PolyMatrix zero_matrix(std::size_t rows, std::size_t cols);
PolyMatrix multiply(const PolyMatrix& a, const PolyMatrix& b);

/// Fraction-free Bareiss determinant; every division is exact.
LaurentPoly det_bareiss(PolyMatrix a);
/// Inverse by Cramer's rule with Bareiss minors. The determinant must be a
/// unit (otherwise NotDivisible); SingularGram if it vanishes.
PolyMatrix inverse_cramer(const PolyMatrix& a);
/// Solves a x = b when det(a) is a unit; columns of b are independent
/// right-hand sides.
std::vector<LaurentPoly> solve_cramer(const PolyMatrix& a, const std::vector<LaurentPoly>& b);

}  // namespace irrvir
