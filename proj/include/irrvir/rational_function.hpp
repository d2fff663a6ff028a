#pragma once

#include <string>

#include "irrvir/laurent_poly.hpp"

namespace irrvir {

/// Quotient of Laurent polynomials. Only the rank-1 Shapovalov solve and the
/// generic linear solves produce these.
///
/// Normal form: unit denominators are folded into the numerator, otherwise the
/// denominator is primitive with a positive leading coefficient. No gcd is
/// taken, so equality is decided by cross multiplication.
class RationalFunction {
public:
    RationalFunction() = default;
    RationalFunction(LaurentPoly num);  // NOLINT(google-explicit-constructor)
    RationalFunction(LaurentPoly num, LaurentPoly den);

    const LaurentPoly& num() const noexcept { return num_; }
    const LaurentPoly& den() const noexcept { return den_; }
    bool is_zero() const noexcept { return num_.is_zero(); }
    /// True when the denominator is 1 (after normalization).
    bool is_polynomial() const;
    /// Returns the Laurent polynomial if the quotient closes; throws NotDivisible.
    LaurentPoly to_laurent() const;

    RationalFunction operator-() const;
    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
    friend bool operator==(const RationalFunction& a, const RationalFunction& b);
    friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

    std::string to_string() const;

private:
    void normalize();

    LaurentPoly num_;
    LaurentPoly den_{1};
};

}  // namespace irrvir
