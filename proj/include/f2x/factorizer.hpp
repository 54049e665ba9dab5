#pragma once

#include <functional>
#include <vector>

#include "f2x/identity_test.hpp"
#include "f2x/polynomial.hpp"

namespace f2x {

/// Split of Var(F) into the pivot's side and the rest, as produced by one
/// partitioning pass. sigma_other empty means no split exists for this pivot
/// (with a correct driver: F is irreducible).
struct VariablePartition {
    std::uint32_t pivot = 0;
    std::vector<bits::Word> sigma_same;  // contains the pivot
    std::vector<bits::Word> sigma_other; // disjoint from sigma_same
};

/// Full factorization result: trivial factors (x, x+1) plus the non-constant
/// irreducible factors over pairwise disjoint variable sets.
struct Factorization {
    std::vector<Polynomial> trivial;
    std::vector<Polynomial> factors;
};

inline bool is_factorable(const Factorization& f) {
    return f.trivial.size() + f.factors.size() >= 2;
}

enum class Driver : std::uint8_t { fd, modfd, gcd };

/// Per-variable classification trace of one partitioning pass (modfd only).
struct ClassifyTiming {
    struct Entry {
        std::uint32_t var;
        double seconds;
        bool other; // classified into sigma_other
    };
    std::vector<Entry> entries; // ascending by var
};

struct PartitionOptions {
    IsEqualConfig is_equal{};
    unsigned threads = 1; // classification workers; capped by F2FACTOR_THREADS
    ClassifyTiming* timing = nullptr;
};

/// Product-based partitioning: forms G = F(x:=0) * dF/dx explicitly and puts
/// y in sigma_other exactly when dG/dy = 0. Memory-hungry but simple.
/// Preconditions: F nonzero, non-constant, free of trivial divisors, at least
/// two variables, pivot in Var(F).
VariablePartition partition_fd(const Polynomial& f, std::uint32_t pivot);

/// Product-free partitioning: y joins sigma_other exactly when
/// dF/dx * d(F(x:=0))/dy = F(x:=0) * d(dF/dx)/dy, decided by is_equal.
/// Same preconditions as partition_fd.
VariablePartition partition_modfd(const Polynomial& f, std::uint32_t pivot,
                                  const PartitionOptions& opt = {});

/// Which occurring variable each factorization round partitions on. The
/// factor set must not depend on this; it exists for benchmarking.
enum class PartitionPivot : std::uint8_t { lowest_var, highest_var };

struct FactorOptions {
    Driver driver = Driver::modfd;
    IsEqualConfig is_equal{};
    unsigned threads = 1;
    PartitionPivot pivot = PartitionPivot::lowest_var;
    /// Skip the multiply-back verification when the reconstructed product
    /// would exceed this many monomials; counts are always cross-checked.
    std::size_t verify_product_bound = std::size_t{1} << 22;
};

/// Splits off trivial divisors, then repeatedly partitions with the fd or
/// modfd driver, emitting the pivot-side projection as an irreducible factor
/// and recursing on the other side. Requires F nonzero and non-constant.
Factorization factor_complete(const Polynomial& f, const FactorOptions& opt = {});

/// gcd plug-in type: both arguments share F's variable table and are nonzero.
using GcdFn = std::function<Polynomial(const Polynomial&, const Polynomial&)>;

/// Gcd-based factorization of a trivial-divisor-free, non-constant F:
/// repeatedly emits F / gcd(F(x:=0), dF/dx) (realized as a projection and
/// verified by multiplication) until the gcd is 1, then appends the residual.
/// A null gcd_fn uses gcd_multilinear.
Factorization factor_gcd(const Polynomial& f, GcdFn gcd_fn = nullptr,
                         const FactorOptions& opt = {});

/// Umbrella entry: strips trivial divisors and dispatches on opt.driver.
Factorization factorize(const Polynomial& f, const FactorOptions& opt = {});

/// Greatest common divisor of two nonzero multilinear polynomials, computed
/// as the product of the irreducible factors the two factorizations share.
Polynomial gcd_multilinear(const Polynomial& p, const Polynomial& q);

/// Rebuilds the product of all factors (trivial and not); data_error if the
/// factor variable sets overlap.
Polynomial reconstruct(const Factorization& f, const VarTablePtr& vars);

} // namespace f2x
