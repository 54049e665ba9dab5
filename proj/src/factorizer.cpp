#include "f2x/factorizer.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <thread>

#include "f2x/product_poly.hpp"

namespace f2x {

using bits::Word;

namespace {

unsigned env_thread_cap() {
    const char* v = std::getenv("F2FACTOR_THREADS");
    if (!v) return 0;
    long n = std::strtol(v, nullptr, 10);
    return n > 0 ? static_cast<unsigned>(n) : 1;
}

unsigned effective_threads(unsigned requested, std::size_t work_items) {
    unsigned t = requested == 0 ? std::max(1u, std::thread::hardware_concurrency()) : requested;
    if (unsigned cap = env_thread_cap(); cap > 0) t = std::min(t, cap);
    t = std::min<std::size_t>(t, work_items);
    return std::max(1u, t);
}

void check_partition_input(const Polynomial& f, std::uint32_t pivot) {
    if (f.is_zero() || f.is_constant())
        throw data_error("partition: input must be nonzero and non-constant");
    auto vm = variable_mask(f);
    if (bits::popcount(vm) < 2) throw data_error("partition: need at least two variables");
    if (!bits::test(vm, pivot)) throw data_error("partition: pivot does not occur in F");
    if (bits::any(divisor_mask(f)))
        throw data_error("partition: trivial divisors must be stripped first");
}

VariablePartition assemble(const Polynomial& f, std::uint32_t pivot,
                           const std::vector<Word>& other_mask) {
    VariablePartition part;
    part.pivot = pivot;
    part.sigma_other = other_mask;
    part.sigma_same = variable_mask(f);
    bits::andnot_assign(part.sigma_same, part.sigma_other);
    return part;
}

std::uint32_t pick_partition_pivot(const std::vector<Word>& vm, PartitionPivot rule) {
    auto bit = rule == PartitionPivot::highest_var ? bits::highest_set(vm)
                                                   : bits::lowest_set(vm);
    return static_cast<std::uint32_t>(*bit);
}

} // namespace

VariablePartition partition_fd(const Polynomial& f, std::uint32_t pivot) {
    check_partition_input(f, pivot);
    Polynomial a = derivative(f, pivot);
    Polynomial b = evaluate(f, pivot, false);

    // dG/dy = 0 exactly when y never occurs with an odd exponent in G; one
    // accumulator over the product's rows answers it for every y at once.
    ProductPoly g = multiply(b, a);
    std::vector<Word> odd(f.stride(), 0);
    for (std::size_t i = 0; i < g.monomial_count(); ++i) bits::or_assign(odd, g.lo(i));

    std::vector<Word> other = variable_mask(f);
    bits::andnot_assign(other, odd);
    bits::reset(other, pivot);
    return assemble(f, pivot, other);
}

VariablePartition partition_modfd(const Polynomial& f, std::uint32_t pivot,
                                  const PartitionOptions& opt) {
    check_partition_input(f, pivot);
    const Polynomial a = derivative(f, pivot);
    const Polynomial b = evaluate(f, pivot, false);

    std::vector<Word> vm = variable_mask(f);
    bits::reset(vm, pivot);
    const std::vector<std::uint32_t> ys = bits::to_indices(vm);

    std::vector<char> is_other(ys.size(), 0);
    std::vector<double> seconds(ys.size(), 0.0);

    const unsigned workers = effective_threads(opt.threads, ys.size());
    std::atomic<std::size_t> next{0};
    auto classify = [&] {
        for (;;) {
            std::size_t k = next.fetch_add(1, std::memory_order_relaxed);
            if (k >= ys.size()) break;
            const std::uint32_t y = ys[k];
            const auto t0 = std::chrono::steady_clock::now();
            Polynomial d = derivative(b, y);
            Polynomial c = derivative(a, y);
            bool eq = is_equal(Quad{a, d, b, c}, opt.is_equal);
            const auto t1 = std::chrono::steady_clock::now();
            is_other[k] = eq ? 1 : 0;
            seconds[k] = std::chrono::duration<double>(t1 - t0).count();
        }
    };

    if (workers <= 1) {
        classify();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned i = 0; i < workers; ++i) pool.emplace_back(classify);
        for (auto& t : pool) t.join();
    }

    std::vector<Word> other(f.stride(), 0);
    for (std::size_t k = 0; k < ys.size(); ++k)
        if (is_other[k]) bits::set(other, ys[k]);

    if (opt.timing) {
        opt.timing->entries.clear();
        for (std::size_t k = 0; k < ys.size(); ++k)
            opt.timing->entries.push_back({ys[k], seconds[k], is_other[k] != 0});
    }
    return assemble(f, pivot, other);
}

namespace {

// Emits one split: projection onto sigma_same becomes a factor, the rest is
// returned for further partitioning. Count and (bounded) product checks guard
// against a driver handing back a bogus partition.
struct SplitOutcome {
    Polynomial factor;
    Polynomial rest;
};

SplitOutcome split_and_verify(const Polynomial& cur, const VariablePartition& part,
                              std::size_t verify_bound) {
    Polynomial fs = projection(cur, part.sigma_same);
    Polynomial fo = projection(cur, part.sigma_other);
    if (fs.monomial_count() * fo.monomial_count() != cur.monomial_count())
        throw defect_error("partition verification failed: monomial counts do not multiply");
    if (cur.monomial_count() <= verify_bound) {
        if (!(multiply_disjoint(fs, fo) == cur))
            throw defect_error("partition verification failed: product differs from input");
    }
    return {std::move(fs), std::move(fo)};
}

} // namespace

Factorization factor_complete(const Polynomial& f, const FactorOptions& opt) {
    if (opt.driver == Driver::gcd)
        throw data_error("factor_complete drives fd or modfd; use factorize for gcd");
    if (f.is_zero() || f.is_constant())
        throw data_error("factor_complete: input must be nonzero and non-constant");

    TrivialSplit ts = strip_trivial_divisors(f);
    Factorization out;
    out.trivial = std::move(ts.factors);

    Polynomial cur = std::move(ts.core);
    while (!cur.is_one()) {
        auto vm = variable_mask(cur);
        if (bits::popcount(vm) < 2) {
            // Unreachable for trivial-free cores; kept as a safety net.
            out.factors.push_back(std::move(cur));
            break;
        }
        std::uint32_t pivot = pick_partition_pivot(vm, opt.pivot);

        VariablePartition part;
        if (opt.driver == Driver::fd) {
            part = partition_fd(cur, pivot);
        } else {
            PartitionOptions popt;
            popt.is_equal = opt.is_equal;
            popt.threads = opt.threads;
            part = partition_modfd(cur, pivot, popt);
        }

        if (bits::none(part.sigma_other)) {
            out.factors.push_back(std::move(cur));
            break;
        }
        SplitOutcome s = split_and_verify(cur, part, opt.verify_product_bound);
        out.factors.push_back(std::move(s.factor));
        cur = std::move(s.rest);
    }
    return out;
}

Factorization factor_gcd(const Polynomial& f, GcdFn gcd_fn, const FactorOptions& opt) {
    if (f.is_zero() || f.is_constant())
        throw data_error("factor_gcd: input must be nonzero and non-constant");
    if (bits::any(divisor_mask(f)))
        throw data_error("factor_gcd: trivial divisors must be stripped first");
    if (!gcd_fn) gcd_fn = [](const Polynomial& p, const Polynomial& q) {
        return gcd_multilinear(p, q);
    };

    Factorization out;
    Polynomial cur = f;
    for (;;) {
        auto vm = variable_mask(cur);
        std::uint32_t pivot = pick_partition_pivot(vm, opt.pivot);
        Polynomial b = evaluate(cur, pivot, false);
        Polynomial a = derivative(cur, pivot);
        Polynomial g = gcd_fn(b, a);
        if (g.is_one()) {
            out.factors.push_back(std::move(cur));
            break;
        }

        // cur / g as a projection away from g's variables, then verified.
        std::vector<Word> keep = variable_mask(cur);
        bits::andnot_assign(keep, variable_mask(g));
        Polynomial quotient = projection(cur, keep);
        if (quotient.monomial_count() * g.monomial_count() != cur.monomial_count() ||
            !(multiply_disjoint(quotient, g) == cur))
            throw defect_error("factor_gcd: gcd_fn returned a non-divisor");
        out.factors.push_back(std::move(quotient));
        cur = std::move(g);
    }
    return out;
}

Factorization factorize(const Polynomial& f, const FactorOptions& opt) {
    if (opt.driver != Driver::gcd) return factor_complete(f, opt);

    if (f.is_zero() || f.is_constant())
        throw data_error("factorize: input must be nonzero and non-constant");
    TrivialSplit ts = strip_trivial_divisors(f);
    Factorization out;
    out.trivial = std::move(ts.factors);
    if (!ts.core.is_one()) {
        Factorization inner = factor_gcd(ts.core, nullptr, opt);
        out.factors = std::move(inner.factors);
    }
    return out;
}

Polynomial gcd_multilinear(const Polynomial& p, const Polynomial& q) {
    if (p.is_zero() || q.is_zero()) throw data_error("gcd_multilinear: zero argument");
    if (!same_table(p.table(), q.table()))
        throw data_error("gcd_multilinear: variable tables differ");
    if (p.is_one() || q.is_one()) return Polynomial::one(p.table());

    auto all_factors = [](const Polynomial& f) {
        Factorization fact = factor_complete(f, FactorOptions{});
        std::vector<Polynomial> out = std::move(fact.trivial);
        for (Polynomial& g : fact.factors) out.push_back(std::move(g));
        return out;
    };
    std::vector<Polynomial> fp = all_factors(p);
    std::vector<Polynomial> fq = all_factors(q);

    Polynomial acc = Polynomial::one(p.table());
    for (const Polynomial& g : fp) {
        if (std::any_of(fq.begin(), fq.end(), [&](const Polynomial& h) { return h == g; }))
            acc = multiply_disjoint(acc, g);
    }
    return acc;
}

Polynomial reconstruct(const Factorization& f, const VarTablePtr& vars) {
    Polynomial acc = Polynomial::one(vars);
    for (const Polynomial& g : f.trivial) acc = multiply_disjoint(acc, g);
    for (const Polynomial& g : f.factors) acc = multiply_disjoint(acc, g);
    return acc;
}

} // namespace f2x
