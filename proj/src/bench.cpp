#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <sstream>
#include <thread>

#include "f2x/bench.hpp"
#include "f2x/json_io.hpp"

namespace f2x {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void run_one(const GenSpec& spec, Driver driver, const BenchConfig& cfg, BenchResult& r) {
    GenResult gen = generate(spec);
    r.input_monomials = gen.poly.monomial_count();
    r.input_length = length(gen.poly);

    FactorOptions fo;
    fo.driver = driver;
    fo.is_equal = cfg.is_equal;
    fo.threads = cfg.driver_threads;

    Factorization fact;
    for (unsigned rep = 0; rep < std::max(1u, cfg.repeat); ++rep) {
        RecursionStats stats;
        fo.is_equal.stats = &stats;
        Clock::time_point t0 = Clock::now();
        fact = factorize(gen.poly, fo);
        r.runs.push_back(seconds_since(t0));
        r.calls = stats.calls.load();
        r.cutoff_hits = stats.cutoff_hits.load();
        r.max_depth = stats.max_depth.load();
    }
    r.seconds = *std::min_element(r.runs.begin(), r.runs.end());

    r.factorable = is_factorable(fact);
    r.trivial_count = fact.trivial.size();
    for (const Polynomial& g : fact.factors) r.factor_sizes.push_back(g.monomial_count());
    std::sort(r.factor_sizes.rbegin(), r.factor_sizes.rend());

    if (driver != Driver::modfd) return;

    // one instrumented classification pass at the lowest-variable pivot
    std::vector<bits::Word> occurring = variable_mask(gen.poly);
    if (bits::popcount(occurring) < 2) return;
    auto pivot = bits::lowest_set(occurring);
    PartitionOptions po;
    po.is_equal = cfg.is_equal;
    po.threads = 1; // timings per variable must not interleave
    po.timing = &r.classify;
    partition_modfd(gen.poly, static_cast<std::uint32_t>(*pivot), po);

    if (!spec.planted || gen.planted_factors.size() != 2) return;
    std::vector<bits::Word> side0 = variable_mask(gen.planted_factors[0]);
    bool pivot_in_0 = bits::test(side0, *pivot);
    double same_sum = 0, cross_sum = 0;
    std::size_t same_n = 0, cross_n = 0;
    for (const ClassifyTiming::Entry& e : r.classify.entries) {
        bool in_0 = bits::test(side0, e.var);
        if (in_0 == pivot_in_0) {
            same_sum += e.seconds;
            ++same_n;
        } else {
            cross_sum += e.seconds;
            ++cross_n;
        }
    }
    if (same_n == 0 || cross_n == 0) return;
    double same_mean = same_sum / static_cast<double>(same_n);
    double cross_mean = cross_sum / static_cast<double>(cross_n);
    if (same_mean > 0 && cross_mean > 0) r.disparity = cross_mean / same_mean;
}

std::string driver_name(Driver d) {
    switch (d) {
        case Driver::fd: return "fd";
        case Driver::modfd: return "modfd";
        default: return "gcd";
    }
}

} // namespace

std::vector<BenchResult> bench(const std::vector<GenSpec>& corpus, const BenchConfig& cfg) {
    struct Job {
        const GenSpec* spec;
        Driver driver;
    };
    std::vector<Job> jobs;
    for (const GenSpec& s : corpus)
        for (Driver d : cfg.drivers) jobs.push_back({&s, d});

    std::vector<BenchResult> results(jobs.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= jobs.size()) return;
            BenchResult& r = results[i];
            r.spec = *jobs[i].spec;
            r.driver = driver_name(jobs[i].driver);
            try {
                run_one(*jobs[i].spec, jobs[i].driver, cfg, r);
            } catch (const std::exception& e) {
                r.failed = true;
                r.error = e.what();
            }
        }
    };

    unsigned workers = std::max(1u, cfg.workers);
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    return results;
}

std::string bench_csv(const std::vector<BenchResult>& results) {
    std::ostringstream out;
    out << "n,m,p,seed,planted,driver,monomials,length,seconds_best,seconds_mean,repeats,"
           "calls,max_depth,cutoff_hits,factorable,trivial,factor_sizes,disparity,error\n";
    for (const BenchResult& r : results) {
        const GenSpec& s = r.spec;
        out << s.n << ',' << s.m << ',' << s.p << ',' << s.seed << ',';
        if (s.planted)
            out << s.planted->n1 << '+' << s.planted->n2 << 'x' << s.planted->m1 << '+'
                << s.planted->m2;
        out << ',' << r.driver << ',' << r.input_monomials << ',' << r.input_length << ',';
        double mean = 0;
        for (double t : r.runs) mean += t;
        if (!r.runs.empty()) mean /= static_cast<double>(r.runs.size());
        out << r.seconds << ',' << mean << ',' << r.runs.size() << ',' << r.calls << ','
            << r.max_depth << ',' << r.cutoff_hits << ',' << (r.factorable ? 1 : 0) << ','
            << r.trivial_count << ',';
        for (std::size_t i = 0; i < r.factor_sizes.size(); ++i)
            out << (i ? ";" : "") << r.factor_sizes[i];
        out << ',';
        if (r.disparity) out << *r.disparity;
        out << ',';
        // commas in error text would break the row
        for (char c : r.error) out << (c == ',' ? ';' : c);
        out << '\n';
    }
    return out.str();
}

nlohmann::json bench_json(const std::vector<BenchResult>& results) {
    nlohmann::json arr = nlohmann::json::array();
    for (const BenchResult& r : results) {
        nlohmann::json j = {{"spec", genspec_to_json(r.spec)},
                            {"driver", r.driver},
                            {"failed", r.failed}};
        if (r.failed) {
            j["error"] = r.error;
            arr.push_back(std::move(j));
            continue;
        }
        j["monomials"] = r.input_monomials;
        j["length"] = r.input_length;
        j["seconds"] = r.seconds;
        j["runs"] = r.runs;
        j["recursion"] = {{"calls", r.calls},
                          {"max_depth", r.max_depth},
                          {"cutoff_hits", r.cutoff_hits}};
        j["factorable"] = r.factorable;
        j["trivial"] = r.trivial_count;
        j["factor_sizes"] = r.factor_sizes;
        if (!r.classify.entries.empty()) {
            std::vector<std::string> names = gen_var_names(r.spec.n);
            nlohmann::json cls = nlohmann::json::array();
            for (const ClassifyTiming::Entry& e : r.classify.entries)
                cls.push_back({{"var", names[e.var]},
                               {"seconds", e.seconds},
                               {"other", e.other}});
            j["classify"] = std::move(cls);
        }
        if (r.disparity) j["disparity"] = *r.disparity;
        arr.push_back(std::move(j));
    }
    return arr;
}

CutoffSweep cutoff_sweep(const Polynomial& f, const std::vector<std::size_t>& cutoffs,
                         const FactorOptions& base) {
    CutoffSweep sweep;
    std::vector<std::string> reference;
    for (std::size_t cutoff : cutoffs) {
        FactorOptions opt = base;
        opt.is_equal.cutoff_length = cutoff;
        Clock::time_point t0 = Clock::now();
        Factorization fact = factorize(f, opt);
        sweep.points.push_back({cutoff, seconds_since(t0)});

        std::vector<std::string> key;
        for (const Polynomial& g : fact.trivial) key.push_back(format(g));
        for (const Polynomial& g : fact.factors) key.push_back(format(g));
        std::sort(key.begin(), key.end());
        if (sweep.points.size() == 1)
            reference = std::move(key);
        else if (key != reference)
            sweep.identical_factors = false;
    }
    return sweep;
}

std::optional<ScalingReport> scaling_report(const std::vector<BenchResult>& results) {
    ScalingReport rep;
    for (const BenchResult& r : results) {
        if (r.failed || r.driver != "modfd" || r.seconds <= 0) continue;
        rep.points.push_back({r.input_length, r.seconds});
    }
    std::sort(rep.points.begin(), rep.points.end());

    // least squares on (log2 length, log2 seconds)
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t k = 0;
    std::size_t distinct = 0;
    for (std::size_t i = 0; i < rep.points.size(); ++i) {
        if (i == 0 || rep.points[i].first != rep.points[i - 1].first) ++distinct;
        double x = std::log2(static_cast<double>(rep.points[i].first));
        double y = std::log2(rep.points[i].second);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++k;
    }
    if (distinct < 2) return std::nullopt;
    double n = static_cast<double>(k);
    rep.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return rep;
}

} // namespace f2x
