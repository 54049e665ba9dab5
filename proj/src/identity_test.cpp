#include "f2x/identity_test.hpp"

#include <algorithm>
#include <bit>
#include <optional>

#include "f2x/product_poly.hpp"

// Decision procedure for A*D = B*C over GF(2) multilinear polynomials.
//
// The query is reduced instead of multiplied out:
//   1. zero parameters settle immediately (the ring has no zero divisors);
//   2. a variable dividing any parameter must divide both sides with the same
//      multiplicity; matched divisors cancel by differentiation;
//   3. once at most one parameter can be constant, the six constant pairings
//      each collapse the query to a single comparison;
//   4. small residual queries are settled by one direct multiplication;
//   5. otherwise one variable z of a chosen parameter splits every parameter
//      P into P = z*P1 + P2, and the query reduces to the two aligned
//      sub-identities (on the P1s and on the P2s) plus one of two cross
//      identities; the candidate pair depends only on which parameter was
//      split, and both candidates avoid the largest parameter.
// Every recursion level eliminates the split variable from all parameters,
// so the depth is bounded by the number of live variables.
//
// Parameter lengths are computed once per query and carried down the
// recursion (the split pass updates them), so no level rescans its inputs.

namespace f2x {

using bits::Word;

namespace {

constexpr int slot(ParamTag t) { return static_cast<int>(t); }

// A product side with at most this many candidate rows is cheaper to expand
// than to keep splitting, regardless of how many variables the rows carry.
constexpr std::size_t kDirectRowProduct = 128;

// The balanced-median statistics are taken over a prefix sample of the rows;
// beyond this many monomials the exact median stops paying for itself.
constexpr std::size_t kPivotSample = 64;

// Weighing more than this many candidate variables costs more than a better
// median saves; candidates beyond the cap are ignored.
constexpr std::size_t kPivotCandidates = 32;

struct Lengths {
    std::array<std::size_t, 4> len;
    std::size_t total() const { return len[0] + len[1] + len[2] + len[3]; }
};

Lengths measure(const std::array<const Polynomial*, 4>& p) {
    Lengths out{};
    for (int i = 0; i < 4; ++i) out.len[i] = length(*p[i]);
    return out;
}

// Per-thread scratch for the masks, bit-plane counters and the direct-product
// table used below, so the recursion does not allocate on paths that decide
// without splitting.
struct Scratch {
    std::array<std::vector<Word>, 4> divisor;
    std::vector<Word> qmask;
    std::vector<Word> carry;
    std::array<std::vector<Word>, 9> planes; // counts up to kPivotSample fit in 9 planes

    // Open-addressed parity table over candidate product rows. One entry per
    // slot keeps a probe within a single cache line.
    struct Slot {
        std::uint64_t epoch;
        std::uint32_t row;
        std::uint8_t parity;
    };
    static constexpr std::size_t kSlots = std::bit_ceil(4 * kDirectRowProduct);
    std::array<Slot, kSlots> slots{};
    std::uint64_t epoch = 0;
    std::vector<Word> arena;
};

Scratch& scratch() {
    thread_local Scratch s;
    return s;
}

// Decides a*d == b*c by toggling every candidate product row in a parity
// table: the products agree exactly when every row is generated an even
// number of times across both sides. Collisions are resolved by comparing
// full rows, so the hash only steers probing; a row is materialized in the
// arena only the first time it appears. Callers guarantee both row products
// stay within kDirectRowProduct.
bool direct_product_equal(const Polynomial& a, const Polynomial& d, const Polynomial& b,
                          const Polynomial& c) {
    const std::size_t stride = a.stride();
    const std::size_t rw = 2 * stride; // exponent-1 and exponent-2 planes
    Scratch& s = scratch();
    s.arena.resize(2 * kDirectRowProduct * rw);
    const std::uint64_t epoch = ++s.epoch;

    std::size_t rows = 0;
    std::size_t odd = 0;
    // The candidate row is (x^y, x&y); it is hashed and compared in that
    // form without being written anywhere until a slot claims it.
    auto toggle = [&](const Word* x, const Word* y) {
        // Hash only the exponent-1 plane, split across two accumulators to
        // keep the multiply chains short. A collision on rows that differ
        // only in the other plane is caught by the full compare below.
        std::uint64_t h1 = 0, h2 = 0;
        for (std::size_t w = 0; w + 1 < stride; w += 2) {
            h1 = (h1 ^ (x[w] ^ y[w])) * 0x9E3779B97F4A7C15ull;
            h2 = (h2 ^ (x[w + 1] ^ y[w + 1])) * 0xBF58476D1CE4E5B9ull;
        }
        if (stride & 1) h1 = (h1 ^ (x[stride - 1] ^ y[stride - 1])) * 0x9E3779B97F4A7C15ull;
        const std::uint64_t h = h1 ^ (h2 >> 7) ^ (h2 << 41);
        std::size_t at = (h ^ (h >> 32)) & (Scratch::kSlots - 1);
        for (;;) {
            Scratch::Slot& slot = s.slots[at];
            if (slot.epoch != epoch) {
                slot.epoch = epoch;
                slot.row = static_cast<std::uint32_t>(rows);
                slot.parity = 1;
                Word* row = s.arena.data() + rows * rw;
                for (std::size_t w = 0; w < stride; ++w) {
                    row[w] = x[w] ^ y[w];
                    row[stride + w] = x[w] & y[w];
                }
                ++rows;
                ++odd;
                return;
            }
            const Word* stored = s.arena.data() + slot.row * rw;
            bool same = true;
            for (std::size_t w = 0; same && w < stride; ++w)
                same = stored[w] == (x[w] ^ y[w]) && stored[stride + w] == (x[w] & y[w]);
            if (same) {
                slot.parity ^= 1;
                if (slot.parity)
                    ++odd;
                else
                    --odd;
                return;
            }
            at = (at + 1) & (Scratch::kSlots - 1);
        }
    };

    const std::size_t total =
        a.monomial_count() * d.monomial_count() + b.monomial_count() * c.monomial_count();
    std::size_t left = total;
    // Once fewer toggles remain than slots with odd parity, the products
    // cannot cancel and the query is refuted without finishing the pass.
    for (std::size_t i = 0; i < a.monomial_count(); ++i)
        for (std::size_t j = 0; j < d.monomial_count(); ++j) {
            toggle(a.row(i).data(), d.row(j).data());
            if (odd > --left) return false;
        }
    for (std::size_t i = 0; i < b.monomial_count(); ++i)
        for (std::size_t j = 0; j < c.monomial_count(); ++j) {
            toggle(b.row(i).data(), c.row(j).data());
            if (odd > --left) return false;
        }
    return odd == 0;
}

// Strips bits of `mask` (present in every monomial of f) from all rows and
// reports the stripped length.
Polynomial strip_divisors(const Polynomial& f, std::span<const Word> mask,
                          std::size_t& new_length) {
    const std::size_t stride = f.stride();
    std::vector<Word> rows(f.data());
    std::size_t total = 0;
    for (std::size_t i = 0; i < f.monomial_count(); ++i) {
        std::size_t p = 0;
        for (std::size_t w = 0; w < stride; ++w) {
            rows[i * stride + w] &= ~mask[w];
            p += static_cast<std::size_t>(std::popcount(rows[i * stride + w]));
        }
        total += p == 0 ? 1 : p;
    }
    new_length = total;
    return Polynomial::from_canonical_rows(f.table(), std::move(rows));
}

// Step 2. Returns false when the two sides carry different divisor
// multiplicities (the identity is then refuted); otherwise replaces divisible
// parameters by their derivatives, storing fresh values in `storage` and
// updating their lengths in place.
bool normalize_divisors(std::array<const Polynomial*, 4>& p,
                        std::array<std::optional<Polynomial>, 4>& storage, Lengths& l) {
    const std::size_t stride = p[0]->stride();
    Scratch& s = scratch();
    bool anydiv = false;
    std::array<bool, 4> divisible{};
    for (int i = 0; i < 4; ++i) {
        std::vector<Word>& acc = s.divisor[i];
        acc.assign(p[i]->row(0).begin(), p[i]->row(0).end());
        for (std::size_t r = 1; r < p[i]->monomial_count(); ++r) {
            bits::and_assign(acc, p[i]->row(r));
            if (bits::none(acc)) break;
        }
        divisible[i] = bits::any(acc);
        anydiv = anydiv || divisible[i];
    }
    if (!anydiv) return true;

    // Multiplicity of z on the left is the number of {A, D} it divides, on
    // the right the number of {B, C}; encode both as (exactly-one, both)
    // bit planes and compare.
    for (std::size_t w = 0; w < stride; ++w) {
        const Word l1 = s.divisor[slot(ParamTag::A)][w] ^ s.divisor[slot(ParamTag::D)][w];
        const Word l2 = s.divisor[slot(ParamTag::A)][w] & s.divisor[slot(ParamTag::D)][w];
        const Word r1 = s.divisor[slot(ParamTag::B)][w] ^ s.divisor[slot(ParamTag::C)][w];
        const Word r2 = s.divisor[slot(ParamTag::B)][w] & s.divisor[slot(ParamTag::C)][w];
        if ((l1 ^ r1) | (l2 ^ r2)) return false;
    }
    for (int i = 0; i < 4; ++i) {
        if (divisible[i]) {
            storage[i] = strip_divisors(*p[i], s.divisor[i], l.len[i]);
            p[i] = &*storage[i];
        }
    }
    return true;
}

struct InternalPivot {
    int q;
    std::uint32_t z;
};

InternalPivot pick_pivot(const std::array<const Polynomial*, 4>& p, const Lengths& l,
                         PivotRule rule) {
    // Scan order A, D, B, C (quad declaration order); strict improvement wins.
    static constexpr int kOrder[4] = {slot(ParamTag::A), slot(ParamTag::D), slot(ParamTag::B),
                                      slot(ParamTag::C)};

    if (rule == PivotRule::first_available) {
        for (int i : kOrder) {
            if (!p[i]->is_constant()) {
                auto vm = variable_mask(*p[i]);
                return {i, static_cast<std::uint32_t>(*bits::lowest_set(vm))};
            }
        }
        throw defect_error("select_pivot: all four parameters constant");
    }

    int largest = kOrder[0];
    for (int i : kOrder)
        if (l.len[i] > l.len[largest]) largest = i;

    int q = slot(diagonal_partner(static_cast<ParamTag>(largest)));
    if (p[q]->is_constant()) {
        // Fall back to the non-constant parameter whose cross identities
        // exclude the longest possible other parameter.
        int best = -1;
        std::size_t best_score = 0;
        for (int i : kOrder) {
            if (p[i]->is_constant()) continue;
            std::size_t score = l.len[slot(diagonal_partner(static_cast<ParamTag>(i)))];
            if (best == -1 || score > best_score) {
                best = i;
                best_score = score;
            }
        }
        if (best == -1) throw defect_error("select_pivot: all four parameters constant");
        q = best;
    }

    // Median rule: choose z in Var(Q) whose occurrence count in the largest
    // parameter is closest to half its monomials, ties to the lowest index.
    // Both statistics come from a row prefix; below the sample bound they
    // are exact.
    const Polynomial& big = *p[largest];
    const Polynomial& qp = *p[q];
    const std::size_t stride = big.stride();
    const std::size_t msample = std::min(big.monomial_count(), kPivotSample);
    const std::size_t qsample = std::min(qp.monomial_count(), kPivotSample);

    Scratch& s = scratch();
    s.qmask.assign(stride, 0);
    for (std::size_t i = 0; i < qsample; ++i) bits::or_assign(s.qmask, qp.row(i));

    // One candidate, nothing to weigh.
    if (bits::popcount(s.qmask) == 1)
        return {q, static_cast<std::uint32_t>(*bits::lowest_set(s.qmask))};

    // Keep the kPivotCandidates lowest candidate variables; clear the rest.
    std::size_t kept = 0;
    for (std::size_t w = 0; w < stride; ++w) {
        if (kept >= kPivotCandidates) {
            s.qmask[w] = 0;
            continue;
        }
        std::size_t here = static_cast<std::size_t>(std::popcount(s.qmask[w]));
        while (kept + here > kPivotCandidates) {
            s.qmask[w] &= ~(Word{1} << (bits::kWordBits - 1 -
                                        static_cast<std::size_t>(std::countl_zero(s.qmask[w]))));
            --here;
        }
        kept += here;
    }

    // Carry-save column addition restricted to candidate bits: plane k holds
    // bit k of each per-variable count. Words outside the candidate mask
    // never carry, so they are skipped throughout.
    s.carry.resize(stride);
    std::size_t planes_used = 0;
    for (std::size_t i = 0; i < msample; ++i) {
        const Word* r = big.row(i).data();
        bool any = false;
        for (std::size_t w = 0; w < stride; ++w) {
            s.carry[w] = r[w] & s.qmask[w];
            any = any || s.carry[w] != 0;
        }
        for (std::size_t k = 0; any; ++k) {
            if (k == planes_used) {
                if (k == s.planes.size()) throw defect_error("pivot count plane overflow");
                s.planes[k].assign(stride, 0);
                ++planes_used;
            }
            any = false;
            Word* plane = s.planes[k].data();
            for (std::size_t w = 0; w < stride; ++w) {
                if (s.qmask[w] == 0) continue;
                Word t = plane[w] & s.carry[w];
                plane[w] ^= s.carry[w];
                s.carry[w] = t;
                any = any || t != 0;
            }
        }
    }

    std::uint32_t best_z = 0;
    std::size_t best_im = 0;
    bool have = false;
    bits::for_each_set_bit(std::span<const Word>(s.qmask), [&](std::size_t v) {
        const std::size_t w = v / bits::kWordBits;
        const Word bit = Word{1} << (v % bits::kWordBits);
        std::size_t count = 0;
        for (std::size_t k = 0; k < planes_used; ++k)
            count |= static_cast<std::size_t>((s.planes[k][w] & bit) != 0) << k;
        const std::size_t im = count * 2 > msample ? count * 2 - msample : msample - count * 2;
        if (!have || im < best_im) {
            have = true;
            best_im = im;
            best_z = static_cast<std::uint32_t>(v);
        }
    });
    if (!have) throw defect_error("select_pivot: chosen parameter has no variables");
    return {q, best_z};
}

// One pass over f: rows containing z go (with z cleared) to the derivative
// part, the rest to the z-free part. Both allocations are exact and the
// resulting lengths fall out of the copy.
void split_param(const Polynomial& f, std::uint32_t z, Polynomial& deriv, Polynomial& eval0,
                 std::size_t& dlen, std::size_t& elen) {
    const std::size_t stride = f.stride();
    const std::size_t word = z / bits::kWordBits;
    const Word mask = Word{1} << (z % bits::kWordBits);
    const std::size_t m = f.monomial_count();

    std::size_t with = 0;
    for (std::size_t i = 0; i < m; ++i)
        with += (f.row(i).data()[word] & mask) != 0;

    std::vector<Word> drows, erows;
    drows.reserve(with * stride);
    erows.reserve((m - with) * stride);
    dlen = 0;
    elen = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const Word* r = f.row(i).data();
        std::size_t pop = 0;
        if (r[word] & mask) {
            const std::size_t at = drows.size();
            drows.insert(drows.end(), r, r + stride);
            drows[at + word] &= ~mask;
            for (std::size_t w = 0; w < stride; ++w)
                pop += static_cast<std::size_t>(std::popcount(drows[at + w]));
            dlen += pop == 0 ? 1 : pop;
        } else {
            erows.insert(erows.end(), r, r + stride);
            for (std::size_t w = 0; w < stride; ++w)
                pop += static_cast<std::size_t>(std::popcount(r[w]));
            elen += pop == 0 ? 1 : pop;
        }
    }
    // The cleared bit was shared by every derivative row and absent from the
    // rest, so both halves inherit the ascending order.
    deriv = Polynomial::from_canonical_rows(f.table(), std::move(drows));
    eval0 = Polynomial::from_canonical_rows(f.table(), std::move(erows));
}

bool rec(const Polynomial& a0, const Polynomial& d0, const Polynomial& b0, const Polynomial& c0,
         const Lengths& lens, const IsEqualConfig& cfg, std::uint32_t depth) {
    if (cfg.stats) cfg.stats->note_call(depth);

    std::array<const Polynomial*, 4> p{&a0, &d0, &b0, &c0};

    // (1) zeros
    if (p[0]->is_zero() || p[1]->is_zero()) return p[2]->is_zero() || p[3]->is_zero();
    if (p[2]->is_zero() || p[3]->is_zero()) return false;

    // (4a) direct product when both sides expand to a handful of rows
    if (cfg.cutoff_length > 0 &&
        p[0]->monomial_count() * p[1]->monomial_count() <= kDirectRowProduct &&
        p[2]->monomial_count() * p[3]->monomial_count() <= kDirectRowProduct) {
        if (cfg.stats) cfg.stats->note_cutoff();
        return direct_product_equal(*p[0], *p[1], *p[2], *p[3]);
    }

    // (2) divisor normalization
    Lengths l = lens;
    std::array<std::optional<Polynomial>, 4> stripped;
    if (!normalize_divisors(p, stripped, l)) return false;

    // (3) constants; after normalization nonzero constants are exactly 1
    const bool one_a = p[0]->is_one(), one_d = p[1]->is_one();
    const bool one_b = p[2]->is_one(), one_c = p[3]->is_one();
    if (one_a && one_d) return one_b && one_c;
    if (one_b && one_c) return false;
    if (one_a && one_b) return *p[1] == *p[3]; // D = C
    if (one_d && one_c) return *p[0] == *p[2]; // A = B
    if (one_a && one_c) return *p[1] == *p[2]; // D = B
    if (one_d && one_b) return *p[0] == *p[3]; // A = C

    // (4b) direct product below the length cutoff
    if (cfg.cutoff_length > 0 && l.total() <= cfg.cutoff_length) {
        if (cfg.stats) cfg.stats->note_cutoff();
        if (p[0]->monomial_count() * p[1]->monomial_count() <= kDirectRowProduct &&
            p[2]->monomial_count() * p[3]->monomial_count() <= kDirectRowProduct)
            return direct_product_equal(*p[0], *p[1], *p[2], *p[3]);
        return multiply(*p[0], *p[1]) == multiply(*p[2], *p[3]);
    }

    // (5) split on one variable
    InternalPivot pv = pick_pivot(p, l, cfg.pivot_rule);
    std::array<Polynomial, 4> d1, e2;
    Lengths ld{}, le{};
    for (int i = 0; i < 4; ++i)
        split_param(*p[i], pv.z, d1[i], e2[i], ld.len[i], le.len[i]);

    if (!rec(e2[0], e2[1], e2[2], e2[3], le, cfg, depth + 1)) return false;
    if (!rec(d1[0], d1[1], d1[2], d1[3], ld, cfg, depth + 1)) return false;

    const auto ids = subidentities_for(static_cast<ParamTag>(pv.q));
    const int x0 = slot(ids[0].x), y0 = slot(ids[0].y);
    const Lengths lc0{{ld.len[x0], le.len[y0], le.len[x0], ld.len[y0]}};
    if (rec(d1[x0], e2[y0], e2[x0], d1[y0], lc0, cfg, depth + 1)) return true;
    const int x1 = slot(ids[1].x), y1 = slot(ids[1].y);
    const Lengths lc1{{ld.len[x1], le.len[y1], le.len[x1], ld.len[y1]}};
    return rec(d1[x1], e2[y1], e2[x1], d1[y1], lc1, cfg, depth + 1);
}

} // namespace

std::array<CrossIdentity, 2> subidentities_for(ParamTag q) {
    using P = ParamTag;
    switch (q) {
        case P::A: return {CrossIdentity{P::A, P::B}, CrossIdentity{P::A, P::C}};
        case P::B: return {CrossIdentity{P::B, P::D}, CrossIdentity{P::A, P::B}};
        case P::C: return {CrossIdentity{P::C, P::D}, CrossIdentity{P::A, P::C}};
        default: return {CrossIdentity{P::C, P::D}, CrossIdentity{P::B, P::D}};
    }
}

bool is_equal(const Quad& q, const IsEqualConfig& cfg) {
    if (!same_table(q.a.table(), q.d.table()) || !same_table(q.a.table(), q.b.table()) ||
        !same_table(q.a.table(), q.c.table()))
        throw data_error("is_equal: variable tables differ");
    std::array<const Polynomial*, 4> p{&q.a, &q.d, &q.b, &q.c};
    return rec(q.a, q.d, q.b, q.c, measure(p), cfg, 1);
}

PivotChoice select_pivot(const Quad& q, PivotRule rule) {
    std::array<const Polynomial*, 4> p{&q.a, &q.d, &q.b, &q.c};
    for (int i = 0; i < 4; ++i)
        if (p[i]->is_zero()) throw defect_error("select_pivot: zero parameter");
    Lengths l = measure(p);
    InternalPivot pv = pick_pivot(p, l, rule);
    return {static_cast<ParamTag>(pv.q), pv.z};
}

} // namespace f2x
