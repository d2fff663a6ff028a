#include "irrvir/var_table.hpp"

#include "irrvir/errors.hpp"

namespace irrvir {

std::shared_ptr<const VarTable> VarTable::create(std::vector<Var> vars) {
    if (vars.size() > kMaxVars)
        throw Error(ErrorKind::InternalConsistency, "too many variables for one table");
    for (std::size_t i = 0; i < vars.size(); ++i)
        for (std::size_t j = i + 1; j < vars.size(); ++j)
            if (vars[i].name == vars[j].name)
                throw Error(ErrorKind::InternalConsistency, "duplicate variable " + vars[i].name);
    return std::shared_ptr<const VarTable>(new VarTable(std::move(vars)));
}

std::optional<std::size_t> VarTable::find(std::string_view name) const noexcept {
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i].name == name) return i;
    return std::nullopt;
}

std::size_t VarTable::index(std::string_view name) const {
    if (auto i = find(name)) return *i;
    throw Error(ErrorKind::UnknownVariable, std::string(name));
}

bool VarTable::same_layout(const VarTable& other) const noexcept {
    if (vars_.size() != other.vars_.size()) return false;
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i].name != other.vars_[i].name || vars_[i].weight != other.vars_[i].weight) return false;
    return true;
}

VarTablePtr standard_table(int r, int lambda_weight, const std::vector<VarTable::Var>& extra) {
    std::vector<VarTable::Var> vars{{"Q", 0}, {"c0p", 0}, {"c0", 0}};
    for (int k = 1; k <= r; ++k) vars.push_back({"c" + std::to_string(k), k});
    vars.push_back({"Lambda", lambda_weight});
    vars.push_back({"Delta", 0});
    vars.insert(vars.end(), extra.begin(), extra.end());
    return VarTable::create(std::move(vars));
}

}  // namespace irrvir
