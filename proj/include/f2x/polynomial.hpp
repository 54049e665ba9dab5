#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "f2x/bitspan.hpp"
#include "f2x/errors.hpp"
#include "f2x/var_table.hpp"

namespace f2x {

/// One multilinear monomial: a set of variables of some table, stored as a
/// bit mask. The empty mask is the constant monomial 1.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::size_t words) : words_(words, 0) {}

    static Monomial of(const VarTable& vars, std::initializer_list<std::string_view> names);

    std::span<const bits::Word> words() const noexcept { return words_; }
    std::span<bits::Word> words() noexcept { return words_; }

    void set(std::uint32_t var) { bits::set(words_, var); }
    bool test(std::uint32_t var) const { return bits::test(words_, var); }
    std::size_t popcount() const { return bits::popcount(words_); }

private:
    std::vector<bits::Word> words_;
};

/// Multilinear polynomial over GF(2), stored as monomial rows in one flat
/// word array, strictly ascending in mask order. The representation is
/// canonical: structural equality coincides with polynomial equality.
/// Instances are immutable once built; all operations return new values.
///
/// A default-constructed Polynomial is a detached placeholder (no table) and
/// may only be assigned to.
class Polynomial {
public:
    Polynomial() = default;

    static Polynomial zero(VarTablePtr vars);
    static Polynomial one(VarTablePtr vars);
    static Polynomial variable(VarTablePtr vars, std::uint32_t index);

    /// Builds from monomials with mod-2 semantics: duplicate pairs cancel.
    static Polynomial from_monomials_mod2(VarTablePtr vars, const std::vector<Monomial>& ms);

    /// Builds from monomials with set semantics: duplicates collapse to one.
    static Polynomial from_monomial_set(VarTablePtr vars, const std::vector<Monomial>& ms);

    const VarTablePtr& table() const;
    const VarTable& vars() const { return *table(); }
    std::size_t stride() const noexcept { return stride_; }

    std::size_t monomial_count() const noexcept { return stride_ == 0 ? 0 : data_.size() / stride_; }
    std::span<const bits::Word> row(std::size_t i) const {
        return {data_.data() + i * stride_, stride_};
    }
    const std::vector<bits::Word>& data() const noexcept { return data_; }

    bool is_zero() const noexcept { return data_.empty(); }
    bool is_one() const noexcept {
        return monomial_count() == 1 && bits::none(row(0));
    }
    bool is_constant() const noexcept { return is_zero() || is_one(); }

    bool operator==(const Polynomial& other) const;

    /// Internal builder: rows must already be canonical (strictly ascending).
    static Polynomial from_canonical_rows(VarTablePtr vars, std::vector<bits::Word> rows);

private:
    Polynomial(VarTablePtr vars, std::vector<bits::Word> rows);

    VarTablePtr vars_;
    std::size_t stride_ = 0;
    std::vector<bits::Word> data_; // monomial_count * stride_ words
};

// ---- Core operations ------------------------------------------------------

/// Mod-2 sum. Tables must match.
Polynomial add(const Polynomial& f, const Polynomial& g);

/// Product of polynomials over disjoint variable sets; stays multilinear.
/// Throws data_error when variable sets intersect. (The square-aware product
/// lives in product_poly.hpp.)
Polynomial multiply_disjoint(const Polynomial& f, const Polynomial& g);

/// Formal derivative: monomials containing the variable, with it removed.
Polynomial derivative(const Polynomial& f, std::uint32_t var);
Polynomial derivative(const Polynomial& f, std::string_view var);

/// Substitution of 0 or 1 for one variable.
Polynomial evaluate(const Polynomial& f, std::uint32_t var, bool value);
Polynomial evaluate(const Polynomial& f, std::string_view var, bool value);

/// True when the variable occurs in every monomial. Rejects the zero polynomial.
bool divides_var(std::uint32_t var, const Polynomial& f);
bool divides_var(std::string_view var, const Polynomial& f);

/// Projection onto a variable set: masks every monomial down to sigma, then
/// collapses duplicates as a set (no mod-2 cancellation).
Polynomial projection(const Polynomial& f, std::span<const bits::Word> sigma);
Polynomial projection(const Polynomial& f, const std::vector<std::string>& sigma_names);

/// Sum of monomial lengths; the constant monomial counts as 1, so
/// length(1) = 1 and length(0) = 0.
std::size_t length(const Polynomial& f);

/// Union of all monomial masks: the variables occurring in f.
std::vector<bits::Word> variable_mask(const Polynomial& f);

/// Intersection of all monomial masks: the variables dividing f.
/// Requires f to be nonzero.
std::vector<bits::Word> divisor_mask(const Polynomial& f);

/// Number of monomials containing each variable (indexed by variable id).
std::vector<std::uint32_t> monomial_counts(const Polynomial& f);

/// Removes all trivial divisors (x and x+1 for single variables x), iterated
/// to a fixed point. Requires f nonzero and non-constant.
struct TrivialSplit {
    std::vector<Polynomial> factors; // each is x or x+1
    Polynomial core;                 // what remains; may be the constant 1
};
TrivialSplit strip_trivial_divisors(const Polynomial& f);

// ---- Text form -------------------------------------------------------------

/// Renders in canonical monomial order: monomials joined by " + ", variables
/// by "*", the constant monomial as "1", the zero polynomial as "0".
std::string format(const Polynomial& f);

/// Parses the textual grammar. With a null table, variable names are collected
/// from the input and sorted alphabetically; with a table given, unknown names
/// are a parse error. Duplicate monomials cancel mod 2; repeated variables in
/// one monomial collapse.
Polynomial parse(std::string_view text, VarTablePtr vars = nullptr);

} // namespace f2x
