#include "f2x/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace f2x {

using bits::Word;

namespace {

void require_table(const VarTablePtr& t) {
    if (!t) throw defect_error("operation on a detached polynomial");
}

void require_same(const Polynomial& f, const Polynomial& g) {
    if (!same_table(f.table(), g.table()))
        throw data_error("variable tables differ");
}

// Sorts flat rows ascending and resolves duplicates. With mod2=true, rows
// occurring an even number of times vanish; otherwise duplicates collapse to
// one (set semantics).
std::vector<Word> canonicalize(std::vector<Word> rows, std::size_t stride, bool mod2) {
    const std::size_t count = stride == 0 ? 0 : rows.size() / stride;
    if (count <= 1) return rows;

    std::vector<std::uint32_t> order(count);
    std::iota(order.begin(), order.end(), 0u);
    const Word* base = rows.data();
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        return bits::compare(base + a * stride, base + b * stride, stride) < 0;
    });

    std::vector<Word> out;
    out.reserve(rows.size());
    std::size_t i = 0;
    while (i < count) {
        std::size_t j = i + 1;
        while (j < count &&
               bits::compare(base + order[i] * stride, base + order[j] * stride, stride) == 0)
            ++j;
        const bool keep = mod2 ? ((j - i) % 2 == 1) : true;
        if (keep)
            out.insert(out.end(), base + order[i] * stride, base + order[i] * stride + stride);
        i = j;
    }
    return out;
}

} // namespace

// ---- Monomial ---------------------------------------------------------------

Monomial Monomial::of(const VarTable& vars, std::initializer_list<std::string_view> names) {
    Monomial m(vars.stride());
    for (std::string_view n : names) m.set(vars.index_of(n));
    return m;
}

// ---- Polynomial construction ------------------------------------------------

Polynomial::Polynomial(VarTablePtr vars, std::vector<Word> rows)
    : vars_(std::move(vars)), stride_(vars_->stride()), data_(std::move(rows)) {}

Polynomial Polynomial::zero(VarTablePtr vars) {
    require_table(vars);
    return Polynomial(std::move(vars), {});
}

Polynomial Polynomial::one(VarTablePtr vars) {
    require_table(vars);
    std::vector<Word> row(vars->stride(), 0);
    return Polynomial(std::move(vars), std::move(row));
}

Polynomial Polynomial::variable(VarTablePtr vars, std::uint32_t index) {
    require_table(vars);
    if (index >= vars->size()) throw data_error("variable index out of range");
    std::vector<Word> row(vars->stride(), 0);
    bits::set(row, index);
    return Polynomial(std::move(vars), std::move(row));
}

Polynomial Polynomial::from_canonical_rows(VarTablePtr vars, std::vector<Word> rows) {
    require_table(vars);
    return Polynomial(std::move(vars), std::move(rows));
}

Polynomial Polynomial::from_monomials_mod2(VarTablePtr vars, const std::vector<Monomial>& ms) {
    require_table(vars);
    const std::size_t stride = vars->stride();
    std::vector<Word> rows;
    rows.reserve(ms.size() * stride);
    for (const Monomial& m : ms) {
        if (m.words().size() != stride) throw data_error("monomial width mismatch");
        rows.insert(rows.end(), m.words().begin(), m.words().end());
    }
    return Polynomial(std::move(vars), canonicalize(std::move(rows), stride, true));
}

Polynomial Polynomial::from_monomial_set(VarTablePtr vars, const std::vector<Monomial>& ms) {
    require_table(vars);
    const std::size_t stride = vars->stride();
    std::vector<Word> rows;
    rows.reserve(ms.size() * stride);
    for (const Monomial& m : ms) {
        if (m.words().size() != stride) throw data_error("monomial width mismatch");
        rows.insert(rows.end(), m.words().begin(), m.words().end());
    }
    return Polynomial(std::move(vars), canonicalize(std::move(rows), stride, false));
}

const VarTablePtr& Polynomial::table() const {
    require_table(vars_);
    return vars_;
}

bool Polynomial::operator==(const Polynomial& other) const {
    if (!same_table(vars_, other.vars_)) return false;
    return data_ == other.data_;
}

// ---- Operations --------------------------------------------------------------

Polynomial add(const Polynomial& f, const Polynomial& g) {
    require_same(f, g);
    const std::size_t stride = f.stride();
    const std::size_t nf = f.monomial_count(), ng = g.monomial_count();
    std::vector<Word> out;
    out.reserve((nf + ng) * stride);

    // Merge two ascending row lists; equal rows cancel mod 2.
    std::size_t i = 0, j = 0;
    while (i < nf && j < ng) {
        int c = bits::compare(f.row(i).data(), g.row(j).data(), stride);
        if (c < 0) {
            out.insert(out.end(), f.row(i).begin(), f.row(i).end());
            ++i;
        } else if (c > 0) {
            out.insert(out.end(), g.row(j).begin(), g.row(j).end());
            ++j;
        } else {
            ++i;
            ++j;
        }
    }
    for (; i < nf; ++i) out.insert(out.end(), f.row(i).begin(), f.row(i).end());
    for (; j < ng; ++j) out.insert(out.end(), g.row(j).begin(), g.row(j).end());
    return Polynomial::from_canonical_rows(f.table(), std::move(out));
}

Polynomial multiply_disjoint(const Polynomial& f, const Polynomial& g) {
    require_same(f, g);
    auto vf = variable_mask(f), vg = variable_mask(g);
    if (bits::intersects(vf, vg))
        throw data_error("multiply_disjoint: variable sets intersect");

    const std::size_t stride = f.stride();
    std::vector<Word> rows;
    rows.reserve(f.monomial_count() * g.monomial_count() * stride);
    for (std::size_t i = 0; i < f.monomial_count(); ++i) {
        for (std::size_t j = 0; j < g.monomial_count(); ++j) {
            const Word* a = f.row(i).data();
            const Word* b = g.row(j).data();
            for (std::size_t w = 0; w < stride; ++w) rows.push_back(a[w] | b[w]);
        }
    }
    // Unions of disjoint-support monomials are pairwise distinct, so this is a
    // pure reorder; no cancellation can occur.
    rows = canonicalize(std::move(rows), stride, true);
    if (!f.is_zero() && !g.is_zero() &&
        rows.size() != f.monomial_count() * g.monomial_count() * stride)
        throw defect_error("disjoint product lost monomials");
    return Polynomial::from_canonical_rows(f.table(), std::move(rows));
}

Polynomial derivative(const Polynomial& f, std::uint32_t var) {
    const std::size_t stride = f.stride();
    const std::size_t word = var / bits::kWordBits;
    const Word mask = Word{1} << (var % bits::kWordBits);
    std::vector<Word> out;
    out.reserve(f.data().size());
    for (std::size_t i = 0; i < f.monomial_count(); ++i) {
        const Word* r = f.row(i).data();
        if (r[word] & mask) {
            std::size_t at = out.size();
            out.insert(out.end(), r, r + stride);
            out[at + word] &= ~mask;
        }
    }
    // The cleared bit was shared by every retained row, so ascending order is
    // preserved.
    return Polynomial::from_canonical_rows(f.table(), std::move(out));
}

Polynomial derivative(const Polynomial& f, std::string_view var) {
    return derivative(f, f.vars().index_of(var));
}

Polynomial evaluate(const Polynomial& f, std::uint32_t var, bool value) {
    const std::size_t stride = f.stride();
    const std::size_t word = var / bits::kWordBits;
    const Word mask = Word{1} << (var % bits::kWordBits);

    if (!value) {
        // Keep the monomials that do not contain the variable.
        std::vector<Word> out;
        out.reserve(f.data().size());
        for (std::size_t i = 0; i < f.monomial_count(); ++i) {
            const Word* r = f.row(i).data();
            if (!(r[word] & mask)) out.insert(out.end(), r, r + stride);
        }
        return Polynomial::from_canonical_rows(f.table(), std::move(out));
    }

    // x := 1 merges the derivative part into the x-free part; equal rows cancel.
    Polynomial with = derivative(f, var);
    Polynomial without = evaluate(f, var, false);
    return add(with, without);
}

Polynomial evaluate(const Polynomial& f, std::string_view var, bool value) {
    return evaluate(f, f.vars().index_of(var), value);
}

bool divides_var(std::uint32_t var, const Polynomial& f) {
    if (f.is_zero()) throw data_error("divides_var: zero polynomial");
    const std::size_t word = var / bits::kWordBits;
    const Word mask = Word{1} << (var % bits::kWordBits);
    for (std::size_t i = 0; i < f.monomial_count(); ++i)
        if (!(f.row(i).data()[word] & mask)) return false;
    return true;
}

bool divides_var(std::string_view var, const Polynomial& f) {
    return divides_var(f.vars().index_of(var), f);
}

Polynomial projection(const Polynomial& f, std::span<const Word> sigma) {
    const std::size_t stride = f.stride();
    if (sigma.size() != stride) throw data_error("projection: mask width mismatch");
    std::vector<Word> rows(f.data());
    for (std::size_t i = 0; i < f.monomial_count(); ++i)
        for (std::size_t w = 0; w < stride; ++w) rows[i * stride + w] &= sigma[w];
    return Polynomial::from_canonical_rows(f.table(),
                                           canonicalize(std::move(rows), stride, false));
}

Polynomial projection(const Polynomial& f, const std::vector<std::string>& sigma_names) {
    std::vector<Word> mask(f.stride(), 0);
    for (const std::string& n : sigma_names) bits::set(mask, f.vars().index_of(n));
    return projection(f, mask);
}

std::size_t length(const Polynomial& f) {
    std::size_t total = 0;
    for (std::size_t i = 0; i < f.monomial_count(); ++i) {
        std::size_t p = bits::popcount(f.row(i));
        total += p == 0 ? 1 : p; // the constant monomial counts as one symbol
    }
    return total;
}

std::vector<Word> variable_mask(const Polynomial& f) {
    std::vector<Word> acc(f.stride(), 0);
    for (std::size_t i = 0; i < f.monomial_count(); ++i) bits::or_assign(acc, f.row(i));
    return acc;
}

std::vector<Word> divisor_mask(const Polynomial& f) {
    if (f.is_zero()) throw data_error("divisor_mask: zero polynomial");
    std::vector<Word> acc(f.row(0).begin(), f.row(0).end());
    for (std::size_t i = 1; i < f.monomial_count(); ++i) {
        bits::and_assign(acc, f.row(i));
        if (bits::none(acc)) break;
    }
    return acc;
}

std::vector<std::uint32_t> monomial_counts(const Polynomial& f) {
    // Carry-save column addition: plane k holds bit k of each per-variable
    // count, so the whole histogram costs one word pass per monomial.
    const std::size_t stride = f.stride();
    std::vector<std::vector<Word>> planes;
    std::vector<Word> carry(stride);
    for (std::size_t i = 0; i < f.monomial_count(); ++i) {
        std::copy(f.row(i).begin(), f.row(i).end(), carry.begin());
        for (std::size_t k = 0; bits::any(carry); ++k) {
            if (k == planes.size()) planes.emplace_back(stride, 0);
            for (std::size_t w = 0; w < stride; ++w) {
                Word t = planes[k][w] & carry[w];
                planes[k][w] ^= carry[w];
                carry[w] = t;
            }
        }
    }
    std::vector<std::uint32_t> counts(f.vars().size(), 0);
    for (std::size_t k = 0; k < planes.size(); ++k) {
        bits::for_each_set_bit(planes[k], [&](std::size_t v) {
            if (v < counts.size()) counts[v] |= 1u << k;
        });
    }
    return counts;
}

TrivialSplit strip_trivial_divisors(const Polynomial& f) {
    if (f.is_zero() || f.is_constant())
        throw data_error("strip_trivial_divisors: input must be nonzero and non-constant");

    TrivialSplit result;
    Polynomial cur = f;
    bool changed = true;
    while (changed && !cur.is_constant()) {
        changed = false;

        // Variables present in every monomial factor out directly.
        auto div = divisor_mask(cur);
        if (bits::any(div)) {
            std::vector<Word> rows(cur.data());
            const std::size_t stride = cur.stride();
            for (std::size_t i = 0; i < cur.monomial_count(); ++i)
                for (std::size_t w = 0; w < stride; ++w) rows[i * stride + w] &= ~div[w];
            bits::for_each_set_bit(std::span<const Word>(div), [&](std::size_t v) {
                result.factors.push_back(
                    Polynomial::variable(cur.table(), static_cast<std::uint32_t>(v)));
            });
            cur = Polynomial::from_canonical_rows(cur.table(), std::move(rows));
            changed = true;
            continue;
        }

        // x+1 divides exactly when substituting x := 1 kills the polynomial,
        // which forces the variable to occur in exactly half the monomials.
        const std::size_t m = cur.monomial_count();
        if (m % 2 == 0) {
            auto mu = monomial_counts(cur);
            auto varmask = variable_mask(cur);
            bool stripped = false;
            bits::for_each_set_bit(std::span<const Word>(varmask), [&](std::size_t v) {
                if (stripped || mu[v] * 2 != m) return;
                auto vi = static_cast<std::uint32_t>(v);
                if (evaluate(cur, vi, true).is_zero()) {
                    Polynomial lin = add(Polynomial::variable(cur.table(), vi),
                                         Polynomial::one(cur.table()));
                    result.factors.push_back(std::move(lin));
                    cur = evaluate(cur, vi, false);
                    stripped = true;
                }
            });
            if (stripped) {
                changed = true;
                continue;
            }
        }
    }
    result.core = std::move(cur);
    return result;
}

// ---- Text form ----------------------------------------------------------------

std::string format(const Polynomial& f) {
    if (f.is_zero()) return "0";
    std::string out;
    for (std::size_t i = 0; i < f.monomial_count(); ++i) {
        if (i > 0) out += " + ";
        auto r = f.row(i);
        if (bits::none(r)) {
            out += "1";
            continue;
        }
        bool first = true;
        bits::for_each_set_bit(r, [&](std::size_t v) {
            if (!first) out += "*";
            out += f.vars().name(static_cast<std::uint32_t>(v));
            first = false;
        });
    }
    return out;
}

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

struct RawTerm {
    std::vector<std::pair<std::string, std::size_t>> names; // name, byte offset
    bool zero = false;                                      // a "0" factor absorbs the term
};

} // namespace

Polynomial parse(std::string_view text, VarTablePtr vars) {
    // Grammar: poly := term ('+' term)* ; term := factor ('*' factor)* ;
    // factor := IDENT | '1' | '0'. A lone "0" denotes the zero polynomial
    // (needed so every format() output round-trips).
    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };

    std::vector<RawTerm> terms;
    bool expect_factor = true;
    RawTerm current;
    bool in_term = false;

    auto finish_term = [&] {
        if (!in_term) throw parse_error("empty term", pos);
        terms.push_back(std::move(current));
        current = RawTerm{};
        in_term = false;
    };

    skip_ws();
    if (pos == text.size()) throw parse_error("empty polynomial", pos);

    while (pos < text.size()) {
        skip_ws();
        if (pos == text.size()) break;
        char c = text[pos];
        if (expect_factor) {
            if (c == '1') {
                ++pos;
            } else if (c == '0') {
                ++pos;
                current.zero = true;
            } else if (ident_start(c)) {
                std::size_t start = pos;
                while (pos < text.size() && ident_char(text[pos])) ++pos;
                current.names.emplace_back(std::string(text.substr(start, pos - start)), start);
            } else {
                throw parse_error("expected a variable, '1' or '0'", pos);
            }
            in_term = true;
            expect_factor = false;
        } else {
            if (c == '*') {
                ++pos;
                expect_factor = true;
            } else if (c == '+') {
                ++pos;
                finish_term();
                expect_factor = true;
            } else {
                throw parse_error("expected '+' or '*'", pos);
            }
        }
    }
    if (expect_factor) throw parse_error("dangling operator", pos);
    finish_term();

    if (!vars) {
        std::vector<std::string> names;
        for (const RawTerm& t : terms)
            for (const auto& [n, at] : t.names) names.push_back(n);
        std::sort(names.begin(), names.end());
        names.erase(std::unique(names.begin(), names.end()), names.end());
        vars = VarTable::make(std::move(names));
    }

    std::vector<Monomial> ms;
    for (const RawTerm& t : terms) {
        if (t.zero) continue;
        Monomial m(vars->stride());
        for (const auto& [n, at] : t.names) {
            auto idx = vars->find(n);
            if (!idx) throw parse_error("unknown variable: " + n, at);
            m.set(*idx); // repeated variables collapse: x*x = x over GF(2)
        }
        ms.push_back(std::move(m));
    }
    return Polynomial::from_monomials_mod2(std::move(vars), ms);
}

} // namespace f2x
