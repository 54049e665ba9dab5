#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace f2x {

/// Immutable, ordered set of variable names. Polynomials hold a shared pointer
/// to one of these; two polynomials may be combined only when their tables hold
/// the same name sequence. The ordering is total and fixed after construction;
/// builders that discover names (the parser, the application front-ends) sort
/// them alphabetically before constructing the table.
class VarTable {
public:
    /// Preserves the given order. Names must be distinct and non-empty.
    static std::shared_ptr<const VarTable> make(std::vector<std::string> names);

    /// Sorts names alphabetically first.
    static std::shared_ptr<const VarTable> make_sorted(std::vector<std::string> names);

    std::size_t size() const noexcept { return names_.size(); }
    const std::string& name(std::uint32_t index) const { return names_.at(index); }
    const std::vector<std::string>& names() const noexcept { return names_; }

    std::optional<std::uint32_t> find(std::string_view name) const;

    /// Throws data_error when the name is unknown.
    std::uint32_t index_of(std::string_view name) const;

    /// Words per monomial row for this table's width.
    std::size_t stride() const noexcept;

    bool operator==(const VarTable& other) const noexcept { return names_ == other.names_; }

private:
    explicit VarTable(std::vector<std::string> names);

    std::vector<std::string> names_;
    std::unordered_map<std::string_view, std::uint32_t> index_;
};

using VarTablePtr = std::shared_ptr<const VarTable>;

/// True when both pointers refer to equal tables (pointer fast path first).
bool same_table(const VarTablePtr& a, const VarTablePtr& b);

} // namespace f2x
