#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "f2x/factorizer.hpp"
#include "f2x/generator.hpp"

namespace f2x {

struct BenchConfig {
    std::vector<Driver> drivers{Driver::modfd};
    unsigned repeat = 1;
    unsigned workers = 1;        // corpus-level pool; keep 1 for clean timings
    unsigned driver_threads = 1; // classification threads inside one run
    IsEqualConfig is_equal{};
};

/// Outcome of one (instance, driver) pair. Verdicts and factor sets are
/// deterministic; only the timing fields vary between runs.
struct BenchResult {
    GenSpec spec;
    std::string driver;

    bool failed = false;
    std::string error;

    std::size_t input_monomials = 0;
    std::size_t input_length = 0; // sum of monomial lengths

    std::vector<double> runs; // wall seconds per repeat
    double seconds = 0;       // best of runs

    // recursion counters of the last repeat
    std::uint64_t calls = 0;
    std::uint64_t cutoff_hits = 0;
    std::uint32_t max_depth = 0;

    bool factorable = false;
    std::size_t trivial_count = 0;
    std::vector<std::size_t> factor_sizes; // monomial counts, descending

    /// modfd only: per-variable classification times of one partitioning
    /// pass at the lowest-variable pivot.
    ClassifyTiming classify;

    /// Planted instances under modfd: mean classification time of variables
    /// from the other component over the mean for the pivot's own component.
    std::optional<double> disparity;
};

/// Generates every instance, runs every configured driver on it, and records
/// outcomes. Failures are captured per result, never thrown. Results come
/// back in (corpus order, driver order).
std::vector<BenchResult> bench(const std::vector<GenSpec>& corpus, const BenchConfig& cfg);

std::string bench_csv(const std::vector<BenchResult>& results);
nlohmann::json bench_json(const std::vector<BenchResult>& results);

/// Factorizes f once per cutoff value and reports the timings; the factor
/// sets are compared across cutoffs as multisets.
struct CutoffSweep {
    struct Point {
        std::size_t cutoff;
        double seconds;
    };
    std::vector<Point> points;
    bool identical_factors = true;
};
CutoffSweep cutoff_sweep(const Polynomial& f, const std::vector<std::size_t>& cutoffs,
                         const FactorOptions& base = {});

/// Least-squares slope of log2(seconds) against log2(input length) over the
/// non-failed modfd results, with the analytical recursion exponent quoted
/// for context. Needs two or more distinct lengths.
struct ScalingReport {
    std::vector<std::pair<std::size_t, double>> points; // (length, best seconds)
    double slope = 0;
    double analytical_exponent = 2.226552;
};
std::optional<ScalingReport> scaling_report(const std::vector<BenchResult>& results);

} // namespace f2x
