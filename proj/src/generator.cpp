#include <algorithm>
#include <cmath>
#include <set>

#include "f2x/generator.hpp"

namespace f2x {

std::uint64_t SplitMix64::threshold_for(double p) {
    if (!(p > 0.0) || !(p < 1.0)) throw data_error("inclusion probability must be in (0,1)");
    long double scaled = std::ceil(std::ldexp(static_cast<long double>(p), 64));
    if (scaled >= 18446744073709551615.0L) return ~std::uint64_t{0};
    return static_cast<std::uint64_t>(scaled);
}

std::vector<std::string> gen_var_names(std::uint32_t n) {
    std::size_t width = std::to_string(n == 0 ? 0 : n - 1).size();
    std::vector<std::string> names;
    names.reserve(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        std::string digits = std::to_string(i);
        names.push_back("x" + std::string(width - digits.size(), '0') + digits);
    }
    return names;
}

namespace {

using Mask = std::vector<bits::Word>;

// Draws one mask over [first, first+count) with the given per-bit threshold,
// bits in ascending variable order.
Mask draw_mask(SplitMix64& rng, std::uint64_t threshold, std::size_t stride,
               std::uint32_t first, std::uint32_t count) {
    Mask m(stride, 0);
    for (std::uint32_t v = first; v < first + count; ++v)
        if (rng.chance(threshold)) bits::set(m, v);
    return m;
}

void check_feasible(std::uint32_t n, std::size_t m) {
    if (n == 0) throw data_error("generator: variable count must be positive");
    if (m == 0) throw data_error("generator: monomial count must be positive");
    if (n < 64 && m > (std::size_t{1} << n))
        throw data_error("generator: " + std::to_string(m) + " distinct monomials over " +
                         std::to_string(n) + " variables is impossible");
}

// One trivial-divisor-free polynomial with exactly m distinct monomials over
// variables [first, first+count) of the table. Stripping removes divisors in
// place and the lost monomials are resampled; a handful of rounds always
// suffices for feasible shapes.
Polynomial draw_polynomial(SplitMix64& rng, std::uint64_t threshold, VarTablePtr vars,
                           std::uint32_t first, std::uint32_t count, std::size_t m) {
    check_feasible(count, m);
    const std::size_t stride = vars->stride();
    std::set<Mask> masks;

    // cap on raw draws, generous even near saturation of the mask space
    std::size_t draws_left = 2'000'000 + 400 * m;
    auto refill = [&] {
        while (masks.size() < m) {
            if (draws_left-- == 0)
                throw data_error("generator: mask sampling stalled; spec too dense for p");
            masks.insert(draw_mask(rng, threshold, stride, first, count));
        }
    };

    for (int round = 0; round < 64; ++round) {
        refill();
        std::vector<Monomial> ms;
        ms.reserve(masks.size());
        for (const Mask& k : masks) {
            Monomial mono(stride);
            std::copy(k.begin(), k.end(), mono.words().begin());
            ms.push_back(std::move(mono));
        }
        Polynomial f = Polynomial::from_monomial_set(vars, ms);
        if (f.is_constant()) { // only possible for m = 1 and the empty mask
            masks.clear();
            continue;
        }
        TrivialSplit split = strip_trivial_divisors(f);
        if (split.factors.empty()) return f;
        masks.clear();
        for (std::size_t i = 0; i < split.core.monomial_count(); ++i) {
            auto row = split.core.row(i);
            masks.insert(Mask(row.begin(), row.end()));
        }
    }
    throw data_error("generator: cannot satisfy the no-trivial-divisor requirement "
                     "for this shape (try a larger monomial count)");
}

} // namespace

GenResult generate(const GenSpec& spec) {
    check_feasible(spec.n, spec.m);
    std::uint64_t threshold = SplitMix64::threshold_for(spec.p);
    VarTablePtr vars = VarTable::make(gen_var_names(spec.n));

    if (!spec.planted) {
        SplitMix64 rng(spec.seed);
        return {draw_polynomial(rng, threshold, vars, 0, spec.n, spec.m), {}};
    }

    const PlantedSpec& pl = *spec.planted;
    if (pl.n1 == 0 || pl.n2 == 0 || pl.n1 + pl.n2 != spec.n)
        throw data_error("generator: planted variable counts must be positive and sum to n");
    if (pl.m1 == 0 || pl.m2 == 0 || pl.m1 * pl.m2 != spec.m)
        throw data_error("generator: planted monomial counts must be positive with m1*m2 = m");

    // independent streams per component, split off the master seed
    SplitMix64 master(spec.seed);
    SplitMix64 rng1(master.next());
    SplitMix64 rng2(master.next());
    GenResult out;
    out.planted_factors.push_back(draw_polynomial(rng1, threshold, vars, 0, pl.n1, pl.m1));
    out.planted_factors.push_back(
        draw_polynomial(rng2, threshold, vars, pl.n1, pl.n2, pl.m2));
    out.poly = multiply_disjoint(out.planted_factors[0], out.planted_factors[1]);
    return out;
}

} // namespace f2x
