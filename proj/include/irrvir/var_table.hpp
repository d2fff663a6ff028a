#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace irrvir {

/// Maximum number of variables a single table may hold. Monomials store a
/// fixed-size exponent array so that they stay allocation free.
inline constexpr std::size_t kMaxVars = 32;

/// Ordered, immutable list of named variables with quasi-homogeneous weights.
/// The order fixes the monomial ordering used for canonical forms.
class VarTable {
public:
    struct Var {
        std::string name;
        int weight = 0;
    };

    static std::shared_ptr<const VarTable> create(std::vector<Var> vars);

    std::size_t size() const noexcept { return vars_.size(); }
    const Var& operator[](std::size_t i) const { return vars_.at(i); }
    const std::string& name(std::size_t i) const { return vars_.at(i).name; }
    int weight(std::size_t i) const { return vars_.at(i).weight; }
    const std::vector<Var>& vars() const noexcept { return vars_; }

    std::optional<std::size_t> find(std::string_view name) const noexcept;
    /// Throws UnknownVariable.
    std::size_t index(std::string_view name) const;

    bool same_layout(const VarTable& other) const noexcept;

private:
    explicit VarTable(std::vector<Var> vars) : vars_(std::move(vars)) {}
    std::vector<Var> vars_;
};

using VarTablePtr = std::shared_ptr<const VarTable>;

/// Standard roster for rank-r work: Q, c0p, c0, c1..c_r, Lambda, Delta,
/// followed by `extra` (unknown slots). Weights: wt(c_k)=k, wt(Lambda)=lambda_weight.
VarTablePtr standard_table(int r, int lambda_weight, const std::vector<VarTable::Var>& extra = {});

}  // namespace irrvir
