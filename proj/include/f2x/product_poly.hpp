#pragma once

#include <string>

#include "f2x/polynomial.hpp"

namespace f2x {

/// Polynomial with per-variable exponents up to 3, as produced by multiplying
/// multilinear polynomials over overlapping variable sets. Each monomial row
/// stores two masks: a low plane and a high plane; the exponent of variable v
/// is lo(v) + 2*hi(v). Rows are kept strictly ascending (numeric order on the
/// concatenated planes), so equality is structural.
///
/// Only products and their comparisons ever see non-multilinear values; the
/// rest of the library works on Polynomial.
class ProductPoly {
public:
    ProductPoly() = default;

    static ProductPoly zero(VarTablePtr vars);

    /// Lifts a multilinear polynomial (high plane empty).
    static ProductPoly lift(const Polynomial& f);

    const VarTablePtr& table() const;
    std::size_t stride() const noexcept { return stride_; }
    std::size_t monomial_count() const noexcept {
        return stride_ == 0 ? 0 : data_.size() / (2 * stride_);
    }

    /// Exponent-1-or-3 plane and exponent-2-or-3 plane of one monomial.
    std::span<const bits::Word> lo(std::size_t i) const {
        return {data_.data() + i * 2 * stride_, stride_};
    }
    std::span<const bits::Word> hi(std::size_t i) const {
        return {data_.data() + i * 2 * stride_ + stride_, stride_};
    }

    bool is_zero() const noexcept { return data_.empty(); }
    bool is_multilinear() const;

    /// Conversion back; throws defect_error if any exponent exceeds 1.
    Polynomial as_multilinear() const;

    bool operator==(const ProductPoly& other) const;

    static ProductPoly from_canonical_rows(VarTablePtr vars, std::vector<bits::Word> rows);

private:
    ProductPoly(VarTablePtr vars, std::vector<bits::Word> rows);

    VarTablePtr vars_;
    std::size_t stride_ = 0;
    std::vector<bits::Word> data_; // monomial_count * 2*stride_ words: [lo|hi] per row
};

/// General product; variable sets may overlap, exponents may reach 2.
ProductPoly multiply(const Polynomial& f, const Polynomial& g);

/// Products with one already-squared operand (exponents may reach 3).
/// Throws defect_error if any exponent would exceed 3.
ProductPoly multiply(const ProductPoly& f, const Polynomial& g);
ProductPoly multiply(const Polynomial& f, const ProductPoly& g);

/// Mod-2 sum of products.
ProductPoly add(const ProductPoly& f, const ProductPoly& g);

bool equal(const ProductPoly& f, const Polynomial& g);

/// Rendering for diagnostics and tests: exponents as "x^2" / "x^3".
std::string format(const ProductPoly& f);

} // namespace f2x
