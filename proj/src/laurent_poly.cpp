#include "irrvir/laurent_poly.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <sstream>

namespace irrvir {

std::string to_string(const Rational& q) { return q.get_str(); }

void Monomial::set(std::size_t i, int value) {
    if (value > std::numeric_limits<std::int16_t>::max() || value < std::numeric_limits<std::int16_t>::min())
        throw Error(ErrorKind::InternalConsistency, "exponent overflow");
    deg += value - e[i];
    e[i] = static_cast<std::int16_t>(value);
}

bool Monomial::is_one() const noexcept {
    for (auto x : e)
        if (x != 0) return false;
    return true;
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
        int v = e[i] + o.e[i];
        if (v > std::numeric_limits<std::int16_t>::max() || v < std::numeric_limits<std::int16_t>::min())
            throw Error(ErrorKind::InternalConsistency, "exponent overflow");
        r.e[i] = static_cast<std::int16_t>(v);
    }
    r.deg = deg + o.deg;
    return r;
}

Monomial Monomial::operator/(const Monomial& o) const {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
        int v = e[i] - o.e[i];
        if (v > std::numeric_limits<std::int16_t>::max() || v < std::numeric_limits<std::int16_t>::min())
            throw Error(ErrorKind::InternalConsistency, "exponent overflow");
        r.e[i] = static_cast<std::int16_t>(v);
    }
    r.deg = deg - o.deg;
    return r;
}

int compare(const Monomial& a, const Monomial& b) noexcept {
    if (a.deg != b.deg) return a.deg < b.deg ? -1 : 1;
    for (std::size_t i = 0; i < kMaxVars; ++i)
        if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? -1 : 1;
    return 0;
}

namespace {

VarTablePtr merge_tables(const VarTablePtr& a, const VarTablePtr& b) {
    if (!a) return b;
    if (!b || a == b) return a;
    if (!a->same_layout(*b)) throw Error(ErrorKind::VarTableMismatch, "operands use different variable tables");
    return a;
}

// Sort and combine like terms; drops zeros.
void canonicalize(std::vector<Term>& terms) {
    std::sort(terms.begin(), terms.end(),
              [](const Term& x, const Term& y) { return compare(x.mono, y.mono) < 0; });
    std::size_t out = 0;
    for (std::size_t i = 0; i < terms.size();) {
        std::size_t j = i + 1;
        Rational acc = std::move(terms[i].coeff);
        acc.canonicalize();
        while (j < terms.size() && terms[j].mono == terms[i].mono) {
            terms[j].coeff.canonicalize();
            acc += terms[j].coeff;
            ++j;
        }
        if (sgn(acc) != 0) {
            terms[out].mono = terms[i].mono;
            terms[out].coeff = std::move(acc);
            ++out;
        }
        i = j;
    }
    terms.resize(out);
}

// out = a + sign*b (both sorted).
std::vector<Term> merge_add(const std::vector<Term>& a, const std::vector<Term>& b, bool subtract) {
    std::vector<Term> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        int c;
        if (i == a.size()) c = 1;
        else if (j == b.size()) c = -1;
        else c = compare(a[i].mono, b[j].mono);
        if (c < 0) {
            out.push_back(a[i++]);
        } else if (c > 0) {
            out.push_back(Term{b[j].mono, subtract ? Rational(-b[j].coeff) : b[j].coeff});
            ++j;
        } else {
            Rational s = subtract ? Rational(a[i].coeff - b[j].coeff) : Rational(a[i].coeff + b[j].coeff);
            if (sgn(s) != 0) out.push_back(Term{a[i].mono, std::move(s)});
            ++i;
            ++j;
        }
    }
    return out;
}

}  // namespace

LaurentPoly::LaurentPoly(const Rational& c) {
    if (sgn(c) != 0) {
        terms_.push_back(Term{Monomial{}, c});
        terms_.back().coeff.canonicalize();
    }
}

LaurentPoly LaurentPoly::constant(VarTablePtr vars, const Rational& c) {
    LaurentPoly p(c);
    p.vars_ = std::move(vars);
    return p;
}

LaurentPoly LaurentPoly::variable(VarTablePtr vars, std::string_view name, int power) {
    Monomial m;
    m.set(vars->index(name), power);
    return monomial(std::move(vars), m, Rational(1));
}

LaurentPoly LaurentPoly::monomial(VarTablePtr vars, const Monomial& m, const Rational& c) {
    LaurentPoly p;
    p.vars_ = std::move(vars);
    if (sgn(c) != 0) {
        p.terms_.push_back(Term{m, c});
        p.terms_.back().coeff.canonicalize();
    }
    return p;
}

LaurentPoly LaurentPoly::from_terms(VarTablePtr vars, std::vector<Term> terms) {
    LaurentPoly p;
    p.vars_ = std::move(vars);
    canonicalize(terms);
    p.terms_ = std::move(terms);
    return p;
}

bool LaurentPoly::is_constant() const noexcept {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one());
}

Rational LaurentPoly::constant_value() const {
    for (const auto& t : terms_)
        if (t.mono.is_one()) return t.coeff;
    return Rational(0);
}

const Term& LaurentPoly::leading_term() const {
    if (terms_.empty()) throw Error(ErrorKind::InternalConsistency, "leading term of zero polynomial");
    return terms_.back();
}

bool LaurentPoly::uses(std::size_t var) const noexcept {
    for (const auto& t : terms_)
        if (t.mono.e[var] != 0) return true;
    return false;
}

bool LaurentPoly::uses(std::string_view name) const {
    if (!vars_) return false;
    auto i = vars_->find(name);
    return i && uses(*i);
}

std::pair<int, int> LaurentPoly::degree_range(std::size_t var) const noexcept {
    if (terms_.empty()) return {0, 0};
    int lo = terms_[0].mono.e[var], hi = lo;
    for (const auto& t : terms_) {
        lo = std::min<int>(lo, t.mono.e[var]);
        hi = std::max<int>(hi, t.mono.e[var]);
    }
    return {lo, hi};
}

void LaurentPoly::adopt_table(const LaurentPoly& o) { vars_ = merge_tables(vars_, o.vars_); }

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    adopt_table(o);
    if (o.terms_.empty()) return *this;
    if (terms_.empty()) {
        terms_ = o.terms_;
        return *this;
    }
    terms_ = merge_add(terms_, o.terms_, false);
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
    adopt_table(o);
    if (o.terms_.empty()) return *this;
    terms_ = merge_add(terms_, o.terms_, true);
    return *this;
}

LaurentPoly& LaurentPoly::operator*=(const Rational& c_in) {
    if (sgn(c_in) == 0) {
        terms_.clear();
        return *this;
    }
    Rational c = c_in;
    c.canonicalize();
    for (auto& t : terms_) t.coeff *= c;
    return *this;
}

LaurentPoly LaurentPoly::shifted(const Monomial& m, const Rational& c_in) const {
    LaurentPoly r;
    r.vars_ = vars_;
    if (sgn(c_in) == 0) return r;
    Rational c = c_in;
    c.canonicalize();
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back(Term{t.mono * m, t.coeff * c});
    return r;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    VarTablePtr vars = merge_tables(a.vars_, b.vars_);
    if (a.terms_.empty() || b.terms_.empty()) {
        LaurentPoly z;
        z.vars_ = vars;
        return z;
    }
    if (a.terms_.size() == 1) {
        LaurentPoly r = b.shifted(a.terms_[0].mono, a.terms_[0].coeff);
        r.vars_ = vars;
        return r;
    }
    if (b.terms_.size() == 1) {
        LaurentPoly r = a.shifted(b.terms_[0].mono, b.terms_[0].coeff);
        r.vars_ = vars;
        return r;
    }
    std::vector<Term> prod;
    prod.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& x : a.terms_)
        for (const auto& y : b.terms_) prod.push_back(Term{x.mono * y.mono, x.coeff * y.coeff});
    return LaurentPoly::from_terms(vars, std::move(prod));
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) {
    *this = *this * o;
    return *this;
}

void LaurentPoly::add_product(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.is_zero() || b.is_zero()) {
        adopt_table(a);
        adopt_table(b);
        return;
    }
    *this += a * b;
}

LaurentPoly LaurentPoly::pow(unsigned n) const {
    LaurentPoly result = LaurentPoly::constant(vars_, Rational(1));
    LaurentPoly base = *this;
    while (n) {
        if (n & 1u) result *= base;
        n >>= 1u;
        if (n) base *= base;
    }
    return result;
}

LaurentPoly LaurentPoly::inverse() const {
    if (terms_.size() != 1) throw Error(ErrorKind::NotDivisible, "inverse of non-unit " + to_string());
    Monomial inv = Monomial{} / terms_[0].mono;
    Rational c = 1 / terms_[0].coeff;
    return LaurentPoly::monomial(vars_, inv, c);
}

bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    if (a.vars_ && b.vars_ && a.vars_ != b.vars_ && !a.vars_->same_layout(*b.vars_)) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
        if (a.terms_[i].mono != b.terms_[i].mono || a.terms_[i].coeff != b.terms_[i].coeff) return false;
    return true;
}

std::string LaurentPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        Rational c = it->coeff;
        bool neg = sgn(c) < 0;
        if (neg) c = -c;
        if (first) {
            if (neg) os << "-";
        } else {
            os << (neg ? " - " : " + ");
        }
        first = false;
        bool one = it->mono.is_one();
        bool unit_coeff = (c == 1);
        if (!unit_coeff || one) {
            os << c.get_str();
            if (!one) os << "*";
        }
        bool first_factor = true;
        for (std::size_t v = 0; v < kMaxVars; ++v) {
            int ex = it->mono.e[v];
            if (ex == 0) continue;
            if (!first_factor) os << "*";
            first_factor = false;
            os << (vars_ ? vars_->name(v) : "x" + std::to_string(v));
            if (ex != 1) os << "^" << ex;
        }
    }
    return os.str();
}

LaurentPoly exact_div(const LaurentPoly& a, const LaurentPoly& b) {
    if (b.is_zero()) throw Error(ErrorKind::NotDivisible, "division by zero");
    if (a.is_zero()) return LaurentPoly::constant(a.vars() ? a.vars() : b.vars(), Rational(0));
    if (b.is_unit()) return a * b.inverse();

    VarTablePtr vars = a.vars() ? a.vars() : b.vars();
    std::size_t n = vars ? vars->size() : 0;
    Monomial min_a, min_b;
    for (std::size_t v = 0; v < n; ++v) {
        min_a.set(v, a.degree_range(v).first);
        min_b.set(v, b.degree_range(v).first);
    }
    Monomial inv_a = Monomial{} / min_a;
    Monomial inv_b = Monomial{} / min_b;
    LaurentPoly rem = a.shifted(inv_a, Rational(1));
    LaurentPoly divisor = b.shifted(inv_b, Rational(1));
    const Term& lead_b = divisor.leading_term();

    std::vector<Term> quotient;
    while (!rem.is_zero()) {
        const Term& lead_r = rem.leading_term();
        Monomial q = lead_r.mono / lead_b.mono;
        for (std::size_t v = 0; v < n; ++v)
            if (q.e[v] < 0)
                throw Error(ErrorKind::NotDivisible, a.to_string() + " by " + b.to_string());
        Rational qc = lead_r.coeff / lead_b.coeff;
        quotient.push_back(Term{q, qc});
        rem -= divisor.shifted(q, qc);
    }
    LaurentPoly result = LaurentPoly::from_terms(vars, std::move(quotient));
    return result.shifted(min_a / min_b, Rational(1));
}

LaurentPoly derivative(const LaurentPoly& a, std::size_t var) {
    std::vector<Term> out;
    for (const auto& t : a.terms()) {
        int ex = t.mono.e[var];
        if (ex == 0) continue;
        Monomial m = t.mono;
        m.set(var, ex - 1);
        out.push_back(Term{m, t.coeff * ex});
    }
    // Uniform shift on the surviving terms keeps them sorted.
    return LaurentPoly::from_terms(a.vars(), std::move(out));
}

LaurentPoly derivative(const LaurentPoly& a, std::string_view var) {
    if (!a.vars()) {
        if (a.is_zero() || a.is_constant()) return LaurentPoly(0);
    }
    return derivative(a, a.vars()->index(var));
}

LaurentPoly coeff(const LaurentPoly& a, std::size_t var, int k) {
    std::vector<Term> out;
    for (const auto& t : a.terms()) {
        if (t.mono.e[var] != k) continue;
        Monomial m = t.mono;
        m.set(var, 0);
        out.push_back(Term{m, t.coeff});
    }
    return LaurentPoly::from_terms(a.vars(), std::move(out));
}

LaurentPoly coeff(const LaurentPoly& a, std::string_view var, int k) {
    if (!a.vars()) return k == 0 ? a : LaurentPoly(0);
    return coeff(a, a.vars()->index(var), k);
}

LaurentPoly substitute(const LaurentPoly& a, std::size_t var, const LaurentPoly& value) {
    if (!a.uses(var)) return a;
    std::map<int, LaurentPoly> powers;
    VarTablePtr vars = a.vars() ? a.vars() : value.vars();
    std::vector<Term> rest;
    LaurentPoly acc = LaurentPoly::constant(vars, Rational(0));
    std::map<int, std::vector<Term>> grouped;
    for (const auto& t : a.terms()) {
        int ex = t.mono.e[var];
        if (ex == 0) {
            rest.push_back(t);
            continue;
        }
        Monomial m = t.mono;
        m.set(var, 0);
        grouped[ex].push_back(Term{m, t.coeff});
    }
    acc += LaurentPoly::from_terms(vars, std::move(rest));
    for (auto& [ex, terms] : grouped) {
        LaurentPoly p;
        if (ex > 0) {
            p = value.pow(static_cast<unsigned>(ex));
        } else {
            p = value.inverse().pow(static_cast<unsigned>(-ex));
        }
        acc += LaurentPoly::from_terms(vars, std::move(terms)) * p;
    }
    return acc;
}

WeightInfo weighted_degree(const LaurentPoly& a) {
    WeightInfo info;
    if (a.is_zero()) return info;
    const auto& vars = a.vars();
    for (const auto& t : a.terms()) {
        int w = 0;
        if (vars)
            for (std::size_t v = 0; v < vars->size(); ++v) w += vars->weight(v) * t.mono.e[v];
        info.weights.insert(w);
    }
    info.homogeneous = info.weights.size() == 1;
    info.weight = *info.weights.begin();
    return info;
}

Rational content(const LaurentPoly& a) {
    if (a.is_zero()) return Rational(1);
    mpz_class num_gcd = 0, den_lcm = 1;
    for (const auto& t : a.terms()) {
        num_gcd = gcd(num_gcd, mpz_class(t.coeff.get_num()));
        den_lcm = lcm(den_lcm, mpz_class(t.coeff.get_den()));
    }
    Rational c(num_gcd, den_lcm);
    c.canonicalize();
    return c;
}

}  // namespace irrvir
