#include "f2x/precheck.hpp"

#include <algorithm>
#include <numeric>

namespace f2x {

using bits::Word;

namespace {

void check_input(const Polynomial& f) {
    if (f.is_zero() || f.is_constant())
        throw data_error("precheck: input must be nonzero and non-constant");
    if (bits::any(divisor_mask(f)))
        throw data_error("precheck: trivial divisors must be stripped first");
}

// Plain union-find, path halving.
struct UnionFind {
    std::vector<std::uint32_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0u);
    }
    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void merge(std::uint32_t a, std::uint32_t b) { parent[find(a)] = find(b); }
};

} // namespace

std::pair<bool, std::vector<std::uint32_t>> gcd_condition(const Polynomial& f) {
    check_input(f);
    const std::size_t m = f.monomial_count();
    std::vector<std::uint32_t> mu = monomial_counts(f);
    auto vm = variable_mask(f);
    bool holds = true;
    bits::for_each_set_bit(std::span<const Word>(vm), [&](std::size_t v) {
        if (std::gcd<std::size_t>(mu[v], m) <= 1) holds = false;
    });
    return {holds, std::move(mu)};
}

std::vector<std::vector<std::uint32_t>> cooccurrence_classes(const Polynomial& f) {
    check_input(f);
    const std::size_t stride = f.stride();
    const std::size_t width = f.vars().size();

    // occ[v] accumulates every monomial containing v, i.e. the set of
    // variables v co-occurs with (including itself).
    std::vector<Word> occ(width * stride, 0);
    for (std::size_t i = 0; i < f.monomial_count(); ++i) {
        auto row = f.row(i);
        bits::for_each_set_bit(row, [&](std::size_t v) {
            std::span<Word> dst(occ.data() + v * stride, stride);
            bits::or_assign(dst, row);
        });
    }

    auto vm = variable_mask(f);
    auto vars = bits::to_indices(vm);
    UnionFind uf(width);
    for (std::size_t a = 0; a < vars.size(); ++a) {
        std::span<const Word> row(occ.data() + vars[a] * stride, stride);
        for (std::size_t b = a + 1; b < vars.size(); ++b) {
            if (!bits::test(row, vars[b])) uf.merge(vars[a], vars[b]);
        }
    }

    std::vector<std::vector<std::uint32_t>> classes;
    std::vector<int> root_to_class(width, -1);
    for (std::uint32_t v : vars) {
        std::uint32_t r = uf.find(v);
        if (root_to_class[r] < 0) {
            root_to_class[r] = static_cast<int>(classes.size());
            classes.emplace_back();
        }
        classes[static_cast<std::size_t>(root_to_class[r])].push_back(v);
    }
    // vars ascending implies each class is ascending and classes are ordered
    // by their minimum element already.
    return classes;
}

PrecheckReport precheck(const Polynomial& f) {
    PrecheckReport report;
    report.monomial_count = f.monomial_count();
    auto [holds, mu] = gcd_condition(f);
    report.gcd_condition_holds = holds;
    report.mu = std::move(mu);
    report.cooccurrence_classes = cooccurrence_classes(f);
    const bool single_class = report.cooccurrence_classes.size() == 1;
    report.verdict = (!holds || single_class) ? PrecheckReport::Verdict::certified_irreducible
                                              : PrecheckReport::Verdict::inconclusive;
    return report;
}

} // namespace f2x
