#pragma once

#include <optional>
#include <string>
#include <vector>

#include "irrvir/laurent_poly.hpp"

namespace irrvir {

/// Laurent series sum_k coeff_k t^k in one expansion variable t, known from
/// `low` up to `high`. An empty `high` means the series is exact (a finite
/// sum); otherwise coefficients above `high` are unknown rather than zero.
class TruncatedSeries {
public:
    TruncatedSeries() = default;
    TruncatedSeries(std::string var, int low, std::vector<LaurentPoly> coeffs, std::optional<int> high);

    static TruncatedSeries exact(std::string var, int low, std::vector<LaurentPoly> coeffs);
    static TruncatedSeries zero(std::string var, std::optional<int> high = std::nullopt);

    const std::string& var() const noexcept { return var_; }
    int low() const noexcept { return low_; }
    std::optional<int> high() const noexcept { return high_; }
    bool is_exact() const noexcept { return !high_; }
    /// Highest order with a stored coefficient (low - 1 when empty).
    int top() const noexcept { return low_ + static_cast<int>(coeffs_.size()) - 1; }
    /// Coefficient at order k; zero outside the stored range. Throws
    /// WindowTooSmall above `high`.
    LaurentPoly at(int k) const;
    bool known(int k) const noexcept { return !high_ || k <= *high_; }

    TruncatedSeries truncated(int high) const;
    /// Removes leading zero coefficients (and trailing ones) without changing the window.
    TruncatedSeries trimmed() const;
    bool is_zero_on_window() const;

    friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b);
    friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b);
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
    friend TruncatedSeries operator*(const TruncatedSeries& a, const LaurentPoly& c);
    TruncatedSeries operator-() const;
    /// Multiply by t^n.
    TruncatedSeries shifted(int n) const;
    /// Apply a coefficientwise map (e.g. a derivative in another variable).
    template <class F>
    TruncatedSeries map(F&& f) const {
        std::vector<LaurentPoly> out;
        out.reserve(coeffs_.size());
        for (const auto& c : coeffs_) out.push_back(f(c));
        return TruncatedSeries(var_, low_, std::move(out), high_);
    }

    /// True when both agree on the common window.
    friend bool equal_on_window(const TruncatedSeries& a, const TruncatedSeries& b);

    std::string to_string() const;

private:
    std::string var_;
    int low_ = 0;
    std::vector<LaurentPoly> coeffs_;
    std::optional<int> high_;
};

/// a / b. The lowest nonzero coefficient of b must be a unit. When both inputs
/// are exact the quotient is cut at `max_order`.
TruncatedSeries series_divide(const TruncatedSeries& a, const TruncatedSeries& b, std::optional<int> max_order = std::nullopt);

}  // namespace irrvir
