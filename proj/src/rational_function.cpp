#include "irrvir/rational_function.hpp"

namespace irrvir {

RationalFunction::RationalFunction(LaurentPoly num) : num_(std::move(num)), den_(1) {}

RationalFunction::RationalFunction(LaurentPoly num, LaurentPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw Error(ErrorKind::NotDivisible, "rational function with zero denominator");
    normalize();
}

void RationalFunction::normalize() {
    if (num_.is_zero()) {
        den_ = LaurentPoly::constant(den_.vars(), Rational(1));
        return;
    }
    if (den_.is_unit()) {
        num_ *= den_.inverse();
        den_ = LaurentPoly::constant(den_.vars(), Rational(1));
        return;
    }
    // Pull out the lowest monomial so the denominator is a genuine polynomial
    // with nonzero constant-free content, then fix scale and sign.
    Monomial low;
    if (const auto& vars = den_.vars())
        for (std::size_t v = 0; v < vars->size(); ++v) low.set(v, den_.degree_range(v).first);
    Monomial inv = Monomial{} / low;
    Rational scale = 1 / content(den_);
    if (sgn(den_.leading_term().coeff) < 0) scale = -scale;
    den_ = den_.shifted(inv, scale);
    num_ = num_.shifted(inv, scale);
    if (!num_.is_zero()) {
        try {
            num_ = exact_div(num_, den_);
            den_ = LaurentPoly::constant(den_.vars(), Rational(1));
        } catch (const Error&) {
        }
    }
}

bool RationalFunction::is_polynomial() const { return den_.is_constant() && den_.constant_value() == 1; }

LaurentPoly RationalFunction::to_laurent() const {
    if (is_polynomial()) return num_;
    return exact_div(num_, den_);
}

RationalFunction RationalFunction::operator-() const {
    RationalFunction r = *this;
    r.num_ = -r.num_;
    return r;
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
    return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.is_zero()) throw Error(ErrorKind::NotDivisible, "division by zero rational function");
    return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
}

bool operator==(const RationalFunction& a, const RationalFunction& b) {
    if (a.den_ == b.den_) return a.num_ == b.num_;
    return a.num_ * b.den_ == b.num_ * a.den_;
}

std::string RationalFunction::to_string() const {
    if (is_polynomial()) return num_.to_string();
    return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

}  // namespace irrvir
