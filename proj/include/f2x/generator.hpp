#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "f2x/polynomial.hpp"

namespace f2x {

/// SplitMix64 with the usual public-domain constants. Every random draw in
/// this library goes through it, with Bernoulli decisions made by threshold
/// compare on raw 64-bit outputs, so a seeded corpus reproduces bit-for-bit
/// on any platform and compiler.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    bool chance(std::uint64_t threshold) noexcept { return next() < threshold; }

    /// Maps p in (0,1) to the compare threshold ceil(p * 2^64).
    static std::uint64_t threshold_for(double p);

private:
    std::uint64_t state_;
};

struct PlantedSpec {
    std::uint32_t n1 = 0;
    std::size_t m1 = 0;
    std::uint32_t n2 = 0;
    std::size_t m2 = 0;
};

/// Random-instance recipe. Monomial masks are sampled with independent
/// per-variable inclusion probability p, deduplicated to exactly m distinct
/// monomials, and stripped of trivial divisors (resampling to restore m).
/// Planted instances are products of two such polynomials over disjoint
/// halves of the variable table, so the true factors are known.
struct GenSpec {
    std::uint32_t n = 0;
    std::size_t m = 0;
    double p = 0.5;
    std::uint64_t seed = 0;
    std::optional<PlantedSpec> planted;
};

struct GenResult {
    Polynomial poly;
    /// Planted mode only: the two components, over poly's table.
    std::vector<Polynomial> planted_factors;
};

/// Deterministic for a given spec. Throws data_error for infeasible specs
/// (m exceeding 2^n distinct masks, inconsistent planted sizes, or a shape
/// that cannot shed its trivial divisors, like m = 1).
GenResult generate(const GenSpec& spec);

/// Names used by generated instances: "x" + zero-padded index, so the
/// alphabetical order of names matches the numeric variable order.
std::vector<std::string> gen_var_names(std::uint32_t n);

} // namespace f2x
