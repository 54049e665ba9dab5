#pragma once

#include <string>
#include <vector>

#include "f2x/factorizer.hpp"
#include "f2x/polynomial.hpp"

namespace f2x {

struct Literal {
    std::string name;
    bool negated = false;

    auto operator<=>(const Literal&) const = default;
};

enum class DnfMode : std::uint8_t {
    monotone, // negation-free; factorization needs the absorption-minimal form
    full_dnf, // every term mentions every variable exactly once
};

/// Disjunction of conjunctive terms with set semantics on both levels:
/// duplicate literals inside a term and duplicate terms collapse. Terms keep
/// their literals sorted; the term list is sorted too.
struct DnfFormula {
    DnfMode mode = DnfMode::monotone;
    std::vector<std::vector<Literal>> terms;
};

/// Text form: terms joined by "|", literals by "&", negation "!".
DnfFormula parse_dnf(std::string_view text, DnfMode mode);
std::string format_dnf(const DnfFormula& f);

/// Removes absorbed terms (strict supersets of another term). Monotone only.
DnfFormula minimize_monotone(const DnfFormula& f);

/// Zhegalkin-style encoding: one monomial per term. Monotone terms map
/// literally; full-DNF literals map to tagged variables, a negated x becomes
/// variable "x_neg". With minimize=false a non-minimal monotone formula is
/// rejected (the encoding is only factorization-faithful on minimal forms).
Polynomial dnf_to_polynomial(const DnfFormula& f, bool minimize = false);

/// Factorizes the encoded polynomial and maps each factor back to a formula.
/// The conjunction of the returned formulas is logically equivalent to f.
std::vector<DnfFormula> decompose_dnf(const DnfFormula& f, bool minimize = false,
                                      const FactorOptions& opt = {});

} // namespace f2x
