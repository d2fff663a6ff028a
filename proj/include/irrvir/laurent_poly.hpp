#pragma once

#include <array>
#include <cstdint>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "irrvir/errors.hpp"
#include "irrvir/var_table.hpp"

namespace irrvir {

using Rational = mpq_class;

std::string to_string(const Rational& q);

/// Exponent vector over a VarTable. Negative exponents are allowed on every
/// variable. `deg` caches the total degree for the graded comparison.
struct Monomial {
    std::array<std::int16_t, kMaxVars> e{};
    std::int32_t deg = 0;

    int operator[](std::size_t i) const noexcept { return e[i]; }
    void set(std::size_t i, int value);
    bool is_one() const noexcept;

    Monomial operator*(const Monomial& o) const;
    Monomial operator/(const Monomial& o) const;

    friend bool operator==(const Monomial& a, const Monomial& b) noexcept { return a.e == b.e; }
    friend bool operator!=(const Monomial& a, const Monomial& b) noexcept { return a.e != b.e; }
};

/// Graded lexicographic order on the table order; returns <0, 0, >0.
int compare(const Monomial& a, const Monomial& b) noexcept;

struct MonomialLess {
    bool operator()(const Monomial& a, const Monomial& b) const noexcept { return compare(a, b) < 0; }
};

struct Term {
    Monomial mono;
    Rational coeff;
};

/// Quasi-homogeneity report for weighted_degree.
struct WeightInfo {
    bool homogeneous = true;
    int weight = 0;              // valid when homogeneous
    std::set<int> weights;       // all weights present (empty for zero)
};

/// Sparse exact Laurent polynomial over Q.
///
/// Terms are kept sorted ascending in graded-lex order with no zero
/// coefficients, so equality is structural. A polynomial without a table is a
/// pure constant and combines with a polynomial over any table.
class LaurentPoly {
public:
    LaurentPoly() = default;
    LaurentPoly(const Rational& c);  // NOLINT(google-explicit-constructor)
    LaurentPoly(long c) : LaurentPoly(Rational(c)) {}  // NOLINT
    LaurentPoly(int c) : LaurentPoly(Rational(c)) {}   // NOLINT

    static LaurentPoly constant(VarTablePtr vars, const Rational& c);
    static LaurentPoly variable(VarTablePtr vars, std::string_view name, int power = 1);
    static LaurentPoly monomial(VarTablePtr vars, const Monomial& m, const Rational& c);
    /// Builds from unsorted terms; duplicates are combined.
    static LaurentPoly from_terms(VarTablePtr vars, std::vector<Term> terms);

    const VarTablePtr& vars() const noexcept { return vars_; }
    const std::vector<Term>& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const noexcept;
    /// Constant term value (coefficient of the unit monomial).
    Rational constant_value() const;
    /// A single term: nonzero rational times a monomial, hence invertible.
    bool is_unit() const noexcept { return terms_.size() == 1; }
    const Term& leading_term() const;

    bool uses(std::size_t var) const noexcept;
    bool uses(std::string_view name) const;
    /// (min, max) exponent of `var` over all terms; (0,0) for zero.
    std::pair<int, int> degree_range(std::size_t var) const noexcept;

    LaurentPoly operator-() const;
    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    LaurentPoly& operator*=(const LaurentPoly& o);
    LaurentPoly& operator*=(const Rational& c);
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
    friend LaurentPoly operator*(LaurentPoly a, const Rational& c) { return a *= c; }
    friend LaurentPoly operator*(const Rational& c, LaurentPoly a) { return a *= c; }

    /// this += a * b, without materializing the product when b is a unit.
    void add_product(const LaurentPoly& a, const LaurentPoly& b);
    /// Multiply every term by the monomial (order preserving).
    LaurentPoly shifted(const Monomial& m, const Rational& c) const;

    LaurentPoly pow(unsigned n) const;
    /// Inverse of a unit; throws NotDivisible otherwise.
    LaurentPoly inverse() const;

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b);
    friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

    std::string to_string() const;

private:
    void adopt_table(const LaurentPoly& o);

    VarTablePtr vars_;
    std::vector<Term> terms_;
};

inline std::ostream& operator<<(std::ostream& os, const LaurentPoly& p) { return os << p.to_string(); }

/// Exact Laurent quotient a/b; throws NotDivisible when none exists.
LaurentPoly exact_div(const LaurentPoly& a, const LaurentPoly& b);
/// Formal partial derivative with the Laurent power rule.
LaurentPoly derivative(const LaurentPoly& a, std::size_t var);
LaurentPoly derivative(const LaurentPoly& a, std::string_view var);
/// Coefficient of var^k, as a polynomial free of var.
LaurentPoly coeff(const LaurentPoly& a, std::size_t var, int k);
LaurentPoly coeff(const LaurentPoly& a, std::string_view var, int k);
/// Replace `var` by `value`. Negative powers require a unit value.
LaurentPoly substitute(const LaurentPoly& a, std::size_t var, const LaurentPoly& value);
WeightInfo weighted_degree(const LaurentPoly& a);
/// Content: rational c > 0 such that a / c has integer coprime coefficients.
Rational content(const LaurentPoly& a);

}  // namespace irrvir
