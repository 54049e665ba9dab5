#pragma once

#include <cstdint>
#include <vector>

#include "f2x/polynomial.hpp"

namespace f2x {

/// Cheap necessary conditions evaluated before any factorization driver.
/// certified_irreducible is sound: when reported, no non-trivial factorization
/// exists. inconclusive means the expensive drivers must decide.
struct PrecheckReport {
    std::size_t monomial_count = 0;
    std::vector<std::uint32_t> mu; // per variable id: monomials containing it
    bool gcd_condition_holds = false;
    std::vector<std::vector<std::uint32_t>> cooccurrence_classes; // sorted ids,
                                                                  // classes by min element
    enum class Verdict : std::uint8_t { certified_irreducible, inconclusive };
    Verdict verdict = Verdict::inconclusive;
};

/// For factorable F every variable's occurrence count shares a factor with
/// the monomial count: returns (holds, mu). Requires F nonzero, non-constant,
/// trivial-divisor-free.
std::pair<bool, std::vector<std::uint32_t>> gcd_condition(const Polynomial& f);

/// Variables that never share a monomial cannot sit in different factors:
/// union-find over such pairs yields classes, each confined to one factor of
/// any factorization. A single class certifies irreducibility.
std::vector<std::vector<std::uint32_t>> cooccurrence_classes(const Polynomial& f);

PrecheckReport precheck(const Polynomial& f);

} // namespace f2x
