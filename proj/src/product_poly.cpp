#include "f2x/product_poly.hpp"

#include <algorithm>
#include <numeric>

namespace f2x {

using bits::Word;

namespace {

void require_table(const VarTablePtr& t) {
    if (!t) throw defect_error("operation on a detached product polynomial");
}

// Same canonicalization as for multilinear rows, over double-width rows.
std::vector<Word> canonicalize_mod2(std::vector<Word> rows, std::size_t rowwords) {
    const std::size_t count = rowwords == 0 ? 0 : rows.size() / rowwords;
    if (count <= 1) return rows;
    std::vector<std::uint32_t> order(count);
    std::iota(order.begin(), order.end(), 0u);
    const Word* base = rows.data();
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        return bits::compare(base + a * rowwords, base + b * rowwords, rowwords) < 0;
    });
    std::vector<Word> out;
    out.reserve(rows.size());
    std::size_t i = 0;
    while (i < count) {
        std::size_t j = i + 1;
        while (j < count &&
               bits::compare(base + order[i] * rowwords, base + order[j] * rowwords, rowwords) == 0)
            ++j;
        if ((j - i) % 2 == 1)
            out.insert(out.end(), base + order[i] * rowwords,
                       base + order[i] * rowwords + rowwords);
        i = j;
    }
    return out;
}

} // namespace

ProductPoly::ProductPoly(VarTablePtr vars, std::vector<Word> rows)
    : vars_(std::move(vars)), stride_(vars_->stride()), data_(std::move(rows)) {}

ProductPoly ProductPoly::zero(VarTablePtr vars) {
    require_table(vars);
    return ProductPoly(std::move(vars), {});
}

ProductPoly ProductPoly::lift(const Polynomial& f) {
    const std::size_t stride = f.stride();
    std::vector<Word> rows;
    rows.reserve(f.monomial_count() * 2 * stride);
    for (std::size_t i = 0; i < f.monomial_count(); ++i) {
        rows.insert(rows.end(), f.row(i).begin(), f.row(i).end());
        rows.insert(rows.end(), stride, 0);
    }
    // With empty high planes the double-width order agrees with the
    // multilinear order, so rows stay canonical.
    return ProductPoly(f.table(), std::move(rows));
}

ProductPoly ProductPoly::from_canonical_rows(VarTablePtr vars, std::vector<Word> rows) {
    require_table(vars);
    return ProductPoly(std::move(vars), std::move(rows));
}

const VarTablePtr& ProductPoly::table() const {
    require_table(vars_);
    return vars_;
}

bool ProductPoly::is_multilinear() const {
    for (std::size_t i = 0; i < monomial_count(); ++i)
        if (bits::any(hi(i))) return false;
    return true;
}

Polynomial ProductPoly::as_multilinear() const {
    std::vector<Word> rows;
    rows.reserve(monomial_count() * stride_);
    for (std::size_t i = 0; i < monomial_count(); ++i) {
        if (bits::any(hi(i))) throw defect_error("as_multilinear: exponent above 1");
        rows.insert(rows.end(), lo(i).begin(), lo(i).end());
    }
    return Polynomial::from_canonical_rows(vars_, std::move(rows));
}

bool ProductPoly::operator==(const ProductPoly& other) const {
    if (!same_table(vars_, other.vars_)) return false;
    return data_ == other.data_;
}

ProductPoly multiply(const Polynomial& f, const Polynomial& g) {
    if (!same_table(f.table(), g.table())) throw data_error("variable tables differ");
    const std::size_t stride = f.stride();
    std::vector<Word> rows;
    rows.reserve(f.monomial_count() * g.monomial_count() * 2 * stride);
    for (std::size_t i = 0; i < f.monomial_count(); ++i) {
        const Word* a = f.row(i).data();
        for (std::size_t j = 0; j < g.monomial_count(); ++j) {
            const Word* b = g.row(j).data();
            for (std::size_t w = 0; w < stride; ++w) rows.push_back(a[w] ^ b[w]); // exponent 1
            for (std::size_t w = 0; w < stride; ++w) rows.push_back(a[w] & b[w]); // exponent 2
        }
    }
    return ProductPoly::from_canonical_rows(f.table(),
                                            canonicalize_mod2(std::move(rows), 2 * stride));
}

ProductPoly multiply(const ProductPoly& f, const Polynomial& g) {
    if (!same_table(f.table(), g.table())) throw data_error("variable tables differ");
    const std::size_t stride = f.stride();
    std::vector<Word> rows;
    rows.reserve(f.monomial_count() * g.monomial_count() * 2 * stride);
    for (std::size_t i = 0; i < f.monomial_count(); ++i) {
        const Word* lo = f.lo(i).data();
        const Word* hi = f.hi(i).data();
        for (std::size_t j = 0; j < g.monomial_count(); ++j) {
            const Word* b = g.row(j).data();
            // Per-variable exponent addition (lo + 2*hi) + b, capped at 3.
            for (std::size_t w = 0; w < stride; ++w) {
                if (hi[w] & (lo[w] & b[w]))
                    throw defect_error("product exponent above 3");
            }
            std::size_t at = rows.size();
            rows.resize(at + 2 * stride);
            for (std::size_t w = 0; w < stride; ++w) {
                Word carry = lo[w] & b[w];
                rows[at + w] = lo[w] ^ b[w];
                rows[at + stride + w] = hi[w] ^ carry;
            }
        }
    }
    return ProductPoly::from_canonical_rows(f.table(),
                                            canonicalize_mod2(std::move(rows), 2 * stride));
}

ProductPoly multiply(const Polynomial& f, const ProductPoly& g) { return multiply(g, f); }

ProductPoly add(const ProductPoly& f, const ProductPoly& g) {
    if (!same_table(f.table(), g.table())) throw data_error("variable tables differ");
    if (f.is_zero()) return g;
    if (g.is_zero()) return f;
    const std::size_t rw = 2 * f.stride();
    const std::size_t nf = f.monomial_count(), ng = g.monomial_count();
    const Word* fb = f.lo(0).data();
    const Word* gb = g.lo(0).data();
    std::vector<Word> out;
    out.reserve((nf + ng) * rw);
    std::size_t i = 0, j = 0;
    while (i < nf && j < ng) {
        int c = bits::compare(fb + i * rw, gb + j * rw, rw);
        if (c < 0) {
            out.insert(out.end(), fb + i * rw, fb + (i + 1) * rw);
            ++i;
        } else if (c > 0) {
            out.insert(out.end(), gb + j * rw, gb + (j + 1) * rw);
            ++j;
        } else {
            ++i;
            ++j;
        }
    }
    for (; i < nf; ++i) out.insert(out.end(), fb + i * rw, fb + (i + 1) * rw);
    for (; j < ng; ++j) out.insert(out.end(), gb + j * rw, gb + (j + 1) * rw);
    return ProductPoly::from_canonical_rows(f.table(), std::move(out));
}

bool equal(const ProductPoly& f, const Polynomial& g) {
    if (!same_table(f.table(), g.table())) return false;
    if (f.monomial_count() != g.monomial_count()) return false;
    for (std::size_t i = 0; i < f.monomial_count(); ++i) {
        if (bits::any(f.hi(i))) return false;
        if (!bits::equal(f.lo(i), g.row(i))) return false;
    }
    return true;
}

std::string format(const ProductPoly& f) {
    if (f.is_zero()) return "0";
    std::string out;
    for (std::size_t i = 0; i < f.monomial_count(); ++i) {
        if (i > 0) out += " + ";
        auto lo = f.lo(i);
        auto hi = f.hi(i);
        std::string term;
        for (std::size_t v = 0; v < f.table()->size(); ++v) {
            int e = (bits::test(lo, v) ? 1 : 0) + (bits::test(hi, v) ? 2 : 0);
            if (e == 0) continue;
            if (!term.empty()) term += "*";
            term += f.table()->name(static_cast<std::uint32_t>(v));
            if (e > 1) term += "^" + std::to_string(e);
        }
        out += term.empty() ? "1" : term;
    }
    return out;
}

} // namespace f2x
