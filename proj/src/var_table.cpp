#include "f2x/var_table.hpp"

#include <algorithm>

#include "f2x/bitspan.hpp"
#include "f2x/errors.hpp"

namespace f2x {

VarTable::VarTable(std::vector<std::string> names) : names_(std::move(names)) {
    index_.reserve(names_.size());
    for (std::uint32_t i = 0; i < names_.size(); ++i) {
        const std::string& n = names_[i];
        if (n.empty()) throw data_error("variable name must not be empty");
        if (!index_.emplace(n, i).second)
            throw data_error("duplicate variable name: " + n);
    }
}

std::shared_ptr<const VarTable> VarTable::make(std::vector<std::string> names) {
    return std::shared_ptr<const VarTable>(new VarTable(std::move(names)));
}

std::shared_ptr<const VarTable> VarTable::make_sorted(std::vector<std::string> names) {
    std::sort(names.begin(), names.end());
    return make(std::move(names));
}

std::optional<std::uint32_t> VarTable::find(std::string_view name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::uint32_t VarTable::index_of(std::string_view name) const {
    auto idx = find(name);
    if (!idx) throw data_error("unknown variable: " + std::string(name));
    return *idx;
}

std::size_t VarTable::stride() const noexcept { return bits::words_for(names_.size()); }

bool same_table(const VarTablePtr& a, const VarTablePtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return *a == *b;
}

} // namespace f2x
