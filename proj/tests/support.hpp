#pragma once

// Shared test support. The Model type is an independent reference
// implementation of polynomial arithmetic (exponent vectors in a set,
// coefficients mod 2) against which the library's word-packed versions are
// checked. Slow on purpose; keep instances small.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "f2x/dnf.hpp"
#include "f2x/factorizer.hpp"
#include "f2x/generator.hpp"
#include "f2x/identity_test.hpp"
#include "f2x/polynomial.hpp"
#include "f2x/product_poly.hpp"

namespace f2x::test {

// ---- reference arithmetic ------------------------------------------------

using ExpVec = std::vector<int>;      // exponent per variable id
using Model = std::set<ExpVec>;       // monomials present (coefficient 1)

inline Model model_of(const Polynomial& f) {
    Model m;
    for (std::size_t i = 0; i < f.monomial_count(); ++i) {
        ExpVec e(f.vars().size(), 0);
        bits::for_each_set_bit(f.row(i), [&](std::size_t v) { e[v] = 1; });
        m.insert(std::move(e));
    }
    return m;
}

inline Model model_of(const ProductPoly& f) {
    Model m;
    for (std::size_t i = 0; i < f.monomial_count(); ++i) {
        ExpVec e(f.table()->size(), 0);
        bits::for_each_set_bit(f.lo(i), [&](std::size_t v) { e[v] += 1; });
        bits::for_each_set_bit(f.hi(i), [&](std::size_t v) { e[v] += 2; });
        m.insert(std::move(e));
    }
    return m;
}

inline void model_toggle(Model& m, ExpVec e) {
    auto it = m.find(e);
    if (it == m.end())
        m.insert(std::move(e));
    else
        m.erase(it);
}

inline Model model_add(const Model& a, const Model& b) {
    Model out = a;
    for (const ExpVec& e : b) model_toggle(out, e);
    return out;
}

inline Model model_mul(const Model& a, const Model& b) {
    Model out;
    for (const ExpVec& ea : a) {
        for (const ExpVec& eb : b) {
            ExpVec e(ea.size(), 0);
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            model_toggle(out, std::move(e));
        }
    }
    return out;
}

// Set-style projection: exponents outside the kept set drop, duplicates
// collapse (no cancellation).
inline Model model_project(const Model& m, const std::set<std::size_t>& keep) {
    Model out;
    for (const ExpVec& e : m) {
        ExpVec r(e.size(), 0);
        for (std::size_t v : keep) r[v] = e[v];
        out.insert(std::move(r));
    }
    return out;
}

inline bool oracle_quad_equal(const Quad& q) {
    return model_mul(model_of(q.a), model_of(q.d)) ==
           model_mul(model_of(q.b), model_of(q.c));
}

// ---- reference factorization (exhaustive bipartitions) --------------------

inline std::set<std::size_t> model_vars(const Model& m) {
    std::set<std::size_t> out;
    for (const ExpVec& e : m)
        for (std::size_t v = 0; v < e.size(); ++v)
            if (e[v]) out.insert(v);
    return out;
}

/// Finest multiplicative partition of the occurring variables: recursively
/// splits off any bipartition (X, Y) with m = m|X * m|Y. Exponential in the
/// variable count.
inline std::vector<std::set<std::size_t>> oracle_blocks(const Model& m) {
    std::set<std::size_t> occurring = model_vars(m);
    std::vector<std::size_t> vars(occurring.begin(), occurring.end());
    if (vars.size() <= 1) return {std::set<std::size_t>(vars.begin(), vars.end())};
    for (std::uint64_t sub = 1; sub + 1 < (std::uint64_t{1} << vars.size()); ++sub) {
        if (sub & 1) continue; // fix vars[0] on the Y side; halves the scan
        std::set<std::size_t> x, y;
        for (std::size_t i = 0; i < vars.size(); ++i)
            ((sub >> i) & 1 ? x : y).insert(vars[i]);
        Model mx = model_project(m, x);
        Model my = model_project(m, y);
        if (model_mul(mx, my) == m) {
            auto left = oracle_blocks(mx);
            auto right = oracle_blocks(my);
            left.insert(left.end(), right.begin(), right.end());
            return left;
        }
    }
    return {std::set<std::size_t>(vars.begin(), vars.end())};
}

inline bool oracle_factorable(const Model& m) { return oracle_blocks(m).size() > 1; }

// ---- conversions and random builders ---------------------------------------

inline Polynomial model_to_poly(VarTablePtr vars, const Model& m) {
    std::vector<Monomial> ms;
    for (const ExpVec& e : m) {
        Monomial mono(vars->stride());
        for (std::size_t v = 0; v < e.size(); ++v) {
            if (e[v] > 1) throw std::logic_error("model_to_poly: non-multilinear model");
            if (e[v]) mono.set(static_cast<std::uint32_t>(v));
        }
        ms.push_back(std::move(mono));
    }
    return Polynomial::from_monomial_set(std::move(vars), ms);
}

inline VarTablePtr small_table(std::size_t n) {
    return VarTable::make(gen_var_names(static_cast<std::uint32_t>(n)));
}

/// Up to max_m distinct random masks over the first n variables (possibly
/// fewer after set-collapse; possibly the zero polynomial when allow_zero).
inline Polynomial random_poly(SplitMix64& rng, const VarTablePtr& vars, std::size_t n,
                              std::size_t max_m, bool allow_zero = true) {
    std::size_t count = rng.next() % (max_m + 1);
    if (!allow_zero && count == 0) count = 1;
    std::vector<Monomial> ms;
    for (std::size_t i = 0; i < count; ++i) {
        Monomial m(vars->stride());
        std::uint64_t word = rng.next();
        for (std::size_t v = 0; v < n; ++v)
            if ((word >> v) & 1) m.set(static_cast<std::uint32_t>(v));
        ms.push_back(std::move(m));
    }
    return Polynomial::from_monomial_set(vars, ms);
}

/// Product of two random nonzero polynomials over disjoint halves of the
/// table, built with reference arithmetic. first gets vars [0, n1), second
/// [n1, n1+n2).
struct PlantedPair {
    Polynomial product;
    Polynomial left, right;
};
inline PlantedPair plant_product(SplitMix64& rng, const VarTablePtr& vars, std::size_t n1,
                                 std::size_t n2, std::size_t max_m) {
    auto half = [&](std::size_t first, std::size_t n) {
        for (;;) {
            std::size_t count = 1 + rng.next() % max_m;
            Model m;
            for (std::size_t i = 0; i < count; ++i) {
                ExpVec e(vars->size(), 0);
                std::uint64_t word = rng.next();
                for (std::size_t v = 0; v < n; ++v)
                    if ((word >> v) & 1) e[first + v] = 1;
                m.insert(std::move(e));
            }
            if (!m.empty()) return m;
        }
    };
    Model left = half(0, n1);
    Model right = half(n1, n2);
    return {model_to_poly(vars, model_mul(left, right)), model_to_poly(vars, left),
            model_to_poly(vars, right)};
}

// ---- point evaluation -------------------------------------------------------

/// Evaluates at the 0/1 point given by bit i of `point` for variable i.
inline bool eval_at(const Polynomial& f, std::uint64_t point) {
    bool acc = false;
    for (std::size_t i = 0; i < f.monomial_count(); ++i) {
        bool term = true;
        bits::for_each_set_bit(f.row(i), [&](std::size_t v) {
            if (!((point >> v) & 1)) term = false;
        });
        acc ^= term;
    }
    return acc;
}

// ---- DNF truth tables --------------------------------------------------------

inline bool dnf_eval(const DnfFormula& f, const std::map<std::string, bool>& point) {
    for (const auto& term : f.terms) {
        bool sat = true;
        for (const Literal& l : term) {
            bool v = point.at(l.name);
            if (l.negated ? v : !v) {
                sat = false;
                break;
            }
        }
        if (sat) return true;
    }
    return false;
}

/// Truth-table equivalence of `input` and the conjunction of `components`
/// over the union of their variable names. Caps at 20 names.
inline bool conjunction_equivalent(const DnfFormula& input,
                                   const std::vector<DnfFormula>& components) {
    std::set<std::string> names;
    for (const auto& t : input.terms)
        for (const Literal& l : t) names.insert(l.name);
    for (const DnfFormula& c : components)
        for (const auto& t : c.terms)
            for (const Literal& l : t) names.insert(l.name);
    if (names.size() > 20) throw std::logic_error("truth table too wide");

    std::vector<std::string> order(names.begin(), names.end());
    for (std::uint64_t bitsv = 0; bitsv < (std::uint64_t{1} << order.size()); ++bitsv) {
        std::map<std::string, bool> point;
        for (std::size_t i = 0; i < order.size(); ++i) point[order[i]] = (bitsv >> i) & 1;
        bool lhs = dnf_eval(input, point);
        bool rhs = true;
        for (const DnfFormula& c : components) rhs = rhs && dnf_eval(c, point);
        if (lhs != rhs) return false;
    }
    return true;
}

// ---- misc -------------------------------------------------------------------

inline std::vector<std::string> factor_strings(const Factorization& f) {
    std::vector<std::string> out;
    for (const Polynomial& g : f.trivial) out.push_back(format(g));
    for (const Polynomial& g : f.factors) out.push_back(format(g));
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace f2x::test
