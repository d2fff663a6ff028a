#include "irrvir/truncated_series.hpp"

#include <algorithm>
#include <sstream>

namespace irrvir {

namespace {

std::optional<int> min_opt(std::optional<int> a, std::optional<int> b) {
    if (!a) return b;
    if (!b) return a;
    return std::min(*a, *b);
}

void check_var(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (a.var() != b.var())
        throw Error(ErrorKind::VarTableMismatch, "series in " + a.var() + " and " + b.var());
}

}  // namespace

TruncatedSeries::TruncatedSeries(std::string var, int low, std::vector<LaurentPoly> coeffs, std::optional<int> high)
    : var_(std::move(var)), low_(low), coeffs_(std::move(coeffs)), high_(high) {
    if (high_ && top() > *high_) coeffs_.resize(static_cast<std::size_t>(std::max(0, *high_ - low_ + 1)));
}

TruncatedSeries TruncatedSeries::exact(std::string var, int low, std::vector<LaurentPoly> coeffs) {
    return TruncatedSeries(std::move(var), low, std::move(coeffs), std::nullopt);
}

TruncatedSeries TruncatedSeries::zero(std::string var, std::optional<int> high) {
    return TruncatedSeries(std::move(var), 0, {}, high);
}

LaurentPoly TruncatedSeries::at(int k) const {
    if (high_ && k > *high_)
        throw Error(ErrorKind::WindowTooSmall, "order " + std::to_string(k) + " beyond window " + std::to_string(*high_));
    if (k < low_ || k > top()) return LaurentPoly(0);
    return coeffs_[static_cast<std::size_t>(k - low_)];
}

TruncatedSeries TruncatedSeries::truncated(int high) const {
    return TruncatedSeries(var_, low_, coeffs_, min_opt(high_, high));
}

TruncatedSeries TruncatedSeries::trimmed() const {
    std::size_t first = 0;
    while (first < coeffs_.size() && coeffs_[first].is_zero()) ++first;
    std::size_t last = coeffs_.size();
    while (last > first && coeffs_[last - 1].is_zero()) --last;
    if (first == last) return TruncatedSeries(var_, 0, {}, high_);
    return TruncatedSeries(var_, low_ + static_cast<int>(first),
                           std::vector<LaurentPoly>(coeffs_.begin() + static_cast<long>(first),
                                                    coeffs_.begin() + static_cast<long>(last)),
                           high_);
}

bool TruncatedSeries::is_zero_on_window() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const LaurentPoly& c) { return c.is_zero(); });
}

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
    check_var(a, b);
    std::optional<int> high = min_opt(a.high_, b.high_);
    int low = std::min(a.low_, b.low_);
    int top = std::max(a.top(), b.top());
    if (high) top = std::min(top, *high);
    std::vector<LaurentPoly> out;
    for (int k = low; k <= top; ++k) out.push_back(a.at(k) + b.at(k));
    return TruncatedSeries(a.var_, low, std::move(out), high);
}

TruncatedSeries TruncatedSeries::operator-() const { return map([](const LaurentPoly& c) { return -c; }); }

TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) { return a + (-b); }

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    check_var(a, b);
    TruncatedSeries x = a.trimmed(), y = b.trimmed();
    if (x.coeffs_.empty() || y.coeffs_.empty()) {
        // A zero factor known only on a window still bounds the product window.
        std::optional<int> high;
        if (x.coeffs_.empty() && x.high_) high = *x.high_ + (y.coeffs_.empty() ? 0 : y.low_);
        if (y.coeffs_.empty() && y.high_) high = min_opt(high, *y.high_ + (x.coeffs_.empty() ? 0 : x.low_));
        return TruncatedSeries(a.var_, 0, {}, high);
    }
    std::optional<int> high;
    if (x.high_) high = *x.high_ + y.low_;
    if (y.high_) high = min_opt(high, *y.high_ + x.low_);
    int low = x.low_ + y.low_;
    int top = x.top() + y.top();
    if (high) top = std::min(top, *high);
    std::vector<LaurentPoly> out;
    for (int n = low; n <= top; ++n) {
        LaurentPoly s;
        for (int i = x.low_; i <= x.top(); ++i) {
            int j = n - i;
            if (j < y.low_ || j > y.top()) continue;
            s.add_product(x.coeffs_[static_cast<std::size_t>(i - x.low_)], y.coeffs_[static_cast<std::size_t>(j - y.low_)]);
        }
        out.push_back(std::move(s));
    }
    return TruncatedSeries(a.var_, low, std::move(out), high);
}

TruncatedSeries operator*(const TruncatedSeries& a, const LaurentPoly& c) {
    return a.map([&](const LaurentPoly& x) { return x * c; });
}

TruncatedSeries TruncatedSeries::shifted(int n) const {
    std::optional<int> high = high_;
    if (high) *high += n;
    return TruncatedSeries(var_, low_ + n, coeffs_, high);
}

bool equal_on_window(const TruncatedSeries& a, const TruncatedSeries& b) {
    return (a - b).is_zero_on_window();
}

std::string TruncatedSeries::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (int k = low_; k <= top(); ++k) {
        const LaurentPoly& c = coeffs_[static_cast<std::size_t>(k - low_)];
        if (c.is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << c.to_string() << ")*" << var_ << "^" << k;
    }
    if (first) os << "0";
    if (high_) os << " + O(" << var_ << "^" << (*high_ + 1) << ")";
    return os.str();
}

TruncatedSeries series_divide(const TruncatedSeries& a, const TruncatedSeries& b, std::optional<int> max_order) {
    check_var(a, b);
    TruncatedSeries x = a.trimmed(), y = b.trimmed();
    if (y.top() < y.low()) throw Error(ErrorKind::NonUnitLeadingCoefficient, "division by zero series");
    const LaurentPoly lead = y.at(y.low());
    if (!lead.is_unit())
        throw Error(ErrorKind::NonUnitLeadingCoefficient, "leading coefficient " + lead.to_string());
    const LaurentPoly lead_inv = lead.inverse();
    int lb = y.low();
    int low = (x.top() < x.low() ? 0 : x.low()) - lb;
    std::optional<int> high;
    if (x.high()) high = *x.high() - lb;
    if (y.high()) high = min_opt(high, *y.high() + (low + lb) - 2 * lb);
    high = min_opt(high, max_order);
    if (!high) {
        // Exact quotient only when b is a single term.
        if (y.top() != y.low())
            throw Error(ErrorKind::WindowTooSmall, "exact division by a non-monomial series needs an order bound");
        high = x.top() - lb;
    }
    std::vector<LaurentPoly> q;
    for (int n = low; n <= *high; ++n) {
        LaurentPoly s = x.known(n + lb) ? x.at(n + lb) : LaurentPoly(0);
        for (int i = low; i < n; ++i) {
            int j = n + lb - i;
            if (j > y.top()) continue;
            s -= q[static_cast<std::size_t>(i - low)] * y.at(j);
        }
        q.push_back(s * lead_inv);
    }
    std::optional<int> out_high = high;
    if (!x.high() && !y.high() && y.top() == y.low()) out_high = std::nullopt;
    return TruncatedSeries(a.var(), low, std::move(q), out_high);
}

}  // namespace irrvir
