// f2factor: factor multilinear polynomials over GF(2) into irreducible
// factors on disjoint variable sets, plus DNF and data-table front-ends.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "f2x/bench.hpp"
#include "f2x/dnf.hpp"
#include "f2x/json_io.hpp"
#include "f2x/precheck.hpp"
#include "f2x/table.hpp"

namespace {

using namespace f2x;

std::string read_all(const std::string& path) {
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw data_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_all(const std::string& path, const std::string& text) {
    if (path == "-" || path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw data_error("cannot open " + path + " for writing");
    out << text;
}

Polynomial read_poly_arg(const std::string& path) {
    std::string text = read_all(path);
    std::istringstream in(text);
    return read_polynomial(in);
}

struct CommonOpts {
    std::string algo = "modfd";
    std::size_t cutoff = 512;
    std::string pivot_rule = "median";
    std::string partition_pivot = "lowest";
    unsigned threads = 1;
};

void add_common(CLI::App* cmd, CommonOpts& c) {
    cmd->add_option("--algo", c.algo, "Driver: fd, modfd, or gcd")
        ->check(CLI::IsMember({"fd", "modfd", "gcd"}));
    cmd->add_option("--cutoff", c.cutoff,
                    "Identity-test length bound below which products are "
                    "compared directly (0 disables)");
    cmd->add_option("--pivot-rule", c.pivot_rule,
                    "Identity-test split variable: median or first")
        ->check(CLI::IsMember({"median", "first"}));
    cmd->add_option("--partition-pivot", c.partition_pivot,
                    "Partitioning pivot per round: lowest or highest variable")
        ->check(CLI::IsMember({"lowest", "highest"}));
    cmd->add_option("--threads", c.threads,
                    "Classification worker threads (0 = hardware); "
                    "F2FACTOR_THREADS caps this");
}

FactorOptions make_factor_options(const CommonOpts& c) {
    FactorOptions opt;
    opt.driver = c.algo == "fd" ? Driver::fd : c.algo == "gcd" ? Driver::gcd : Driver::modfd;
    opt.is_equal.cutoff_length = c.cutoff;
    opt.is_equal.pivot_rule =
        c.pivot_rule == "first" ? PivotRule::first_available : PivotRule::balanced_median;
    opt.pivot = c.partition_pivot == "highest" ? PartitionPivot::highest_var
                                               : PartitionPivot::lowest_var;
    opt.threads = c.threads;
    return opt;
}

int run_factor(const std::string& in_path, const CommonOpts& common, bool no_precheck,
               bool as_json) {
    Polynomial f = read_poly_arg(in_path);
    if (f.is_constant())
        throw data_error("input is the constant " + format(f) + "; nothing to factor");

    nlohmann::json out;
    out["input"] = {{"monomials", f.monomial_count()},
                    {"variables", bits::popcount(variable_mask(f))}};

    TrivialSplit ts = strip_trivial_divisors(f);
    bool certified = false;
    if (!no_precheck && !ts.core.is_constant()) {
        PrecheckReport rep = precheck(ts.core);
        certified = rep.verdict == PrecheckReport::Verdict::certified_irreducible;
        out["precheck"] = precheck_to_json(rep, f.vars());
    }

    Factorization fact;
    if (certified) {
        // the stripped core cannot split further; skip the driver
        fact.trivial = std::move(ts.factors);
        fact.factors.push_back(std::move(ts.core));
    } else {
        fact = factorize(f, make_factor_options(common));
    }
    out.update(factorization_to_json(fact));
    out["factorable"] = is_factorable(fact);

    if (as_json) {
        std::cout << out.dump(2) << "\n";
        return 0;
    }
    std::cout << "monomials: " << f.monomial_count() << "\n";
    if (out.contains("precheck"))
        std::cout << "precheck: " << out["precheck"]["verdict"].get<std::string>() << "\n";
    std::cout << "factorable: " << (is_factorable(fact) ? "yes" : "no") << "\n";
    for (const Polynomial& g : fact.trivial) std::cout << "trivial: " << format(g) << "\n";
    for (const Polynomial& g : fact.factors) std::cout << "factor: " << format(g) << "\n";
    return 0;
}

int run_check(const std::string& in_path, bool as_json) {
    Polynomial f = read_poly_arg(in_path);
    if (f.is_constant()) throw data_error("input is constant; nothing to check");
    TrivialSplit ts = strip_trivial_divisors(f);

    nlohmann::json trivial = nlohmann::json::array();
    for (const Polynomial& g : ts.factors) trivial.push_back(format(g));

    if (ts.core.is_constant()) {
        nlohmann::json out = {{"trivial", trivial},
                              {"verdict", "fully_trivial"},
                              {"monomial_count", f.monomial_count()}};
        if (as_json) {
            std::cout << out.dump(2) << "\n";
        } else {
            std::cout << "the input is a product of single-variable factors\n";
            for (const Polynomial& g : ts.factors)
                std::cout << "trivial: " << format(g) << "\n";
        }
        return 0;
    }

    PrecheckReport rep = precheck(ts.core);
    nlohmann::json out = precheck_to_json(rep, f.vars());
    out["trivial"] = trivial;
    if (as_json) {
        std::cout << out.dump(2) << "\n";
        return 0;
    }
    std::cout << "monomials: " << rep.monomial_count << "\n";
    for (const Polynomial& g : ts.factors) std::cout << "trivial divisor: " << format(g) << "\n";
    std::cout << "gcd condition: " << (rep.gcd_condition_holds ? "holds" : "fails") << "\n";
    std::cout << "co-occurrence classes: " << rep.cooccurrence_classes.size() << "\n";
    for (const auto& cls : rep.cooccurrence_classes) {
        std::cout << " ";
        for (std::uint32_t v : cls) std::cout << " " << f.vars().name(v);
        std::cout << "\n";
    }
    std::cout << "verdict: "
              << (rep.verdict == PrecheckReport::Verdict::certified_irreducible
                      ? "certified irreducible"
                      : "inconclusive")
              << "\n";
    return 0;
}

int run_dnf(const std::string& in_path, const std::string& mode_name, bool minimize,
            const CommonOpts& common, bool as_json) {
    DnfMode mode = mode_name == "full" ? DnfMode::full_dnf : DnfMode::monotone;
    DnfFormula f = parse_dnf(read_all(in_path), mode);
    std::vector<DnfFormula> components = decompose_dnf(f, minimize, make_factor_options(common));

    if (as_json) {
        nlohmann::json comps = nlohmann::json::array();
        for (const DnfFormula& c : components) comps.push_back(format_dnf(c));
        std::cout << nlohmann::json{{"input", format_dnf(f)}, {"components", comps}}.dump(2)
                  << "\n";
        return 0;
    }
    for (const DnfFormula& c : components) std::cout << "component: " << format_dnf(c) << "\n";
    return 0;
}

int run_table(const std::string& csv_path, const std::string& merge, bool dedupe,
              const CommonOpts& common, bool as_json) {
    DataTable t;
    {
        std::string text = read_all(csv_path);
        std::istringstream in(text);
        t = read_csv(in);
    }
    TableOptions opt;
    opt.dedupe = dedupe;
    opt.factor = make_factor_options(common);
    if (merge == "auto") {
        opt.merge.kind = MergePolicy::Kind::smallest;
    } else if (!merge.empty()) {
        try {
            opt.merge.index = std::stoul(merge);
        } catch (const std::exception&) {
            throw CLI::ValidationError("--merge-constants",
                                       "expected 'auto' or a table index, got '" + merge + "'");
        }
        opt.merge.kind = MergePolicy::Kind::index;
    }

    TableDecomposition dec = decompose_table(t, opt);
    if (as_json) {
        std::cout << decomposition_to_json(dec).dump(2) << "\n";
        return 0;
    }
    for (std::size_t i = 0; i < dec.tables.size(); ++i) {
        std::cout << "-- table " << i << " (" << dec.tables[i].rows.size() << " rows)\n"
                  << write_csv(dec.tables[i]);
        if (i + 1 < dec.tables.size() || !dec.constants.empty()) std::cout << "\n";
    }
    for (const ConstantColumn& c : dec.constants)
        std::cout << "constant: " << c.attribute << " = " << c.value << "\n";
    return 0;
}

int run_gen(const GenSpec& spec, const std::string& out_path) {
    GenResult r = generate(spec);
    write_all(out_path, gen_result_to_json(spec, r).dump(2) + "\n");
    return 0;
}

int run_bench(const std::string& spec_path, const std::string& drivers_csv, unsigned repeat,
              unsigned workers, const CommonOpts& common, const std::string& out_csv,
              const std::string& out_json, bool ladder) {
    nlohmann::json doc = parse_json(read_all(spec_path));
    const nlohmann::json& corpus_json = doc.is_array() ? doc : doc.at("corpus");
    std::vector<GenSpec> corpus;
    for (const nlohmann::json& j : corpus_json) corpus.push_back(genspec_from_json(j));
    if (corpus.empty()) throw data_error("bench: empty corpus");

    BenchConfig cfg;
    cfg.drivers.clear();
    std::stringstream names(drivers_csv);
    for (std::string name; std::getline(names, name, ',');) {
        if (name == "fd") cfg.drivers.push_back(Driver::fd);
        else if (name == "modfd") cfg.drivers.push_back(Driver::modfd);
        else if (name == "gcd") cfg.drivers.push_back(Driver::gcd);
        else throw CLI::ValidationError("--drivers", "unknown driver '" + name + "'");
    }
    cfg.repeat = repeat;
    cfg.workers = workers;
    FactorOptions fo = make_factor_options(common);
    cfg.is_equal = fo.is_equal;
    cfg.driver_threads = fo.threads;

    std::vector<BenchResult> results = bench(corpus, cfg);
    for (const BenchResult& r : results) {
        std::cout << "n=" << r.spec.n << " m=" << r.spec.m << " seed=" << r.spec.seed
                  << " driver=" << r.driver;
        if (r.failed) {
            std::cout << " FAILED: " << r.error << "\n";
            continue;
        }
        std::cout << " seconds=" << r.seconds << " factors=" << r.factor_sizes.size()
                  << " trivial=" << r.trivial_count;
        if (r.disparity) std::cout << " disparity=" << *r.disparity;
        std::cout << "\n";
    }
    if (!out_csv.empty()) write_all(out_csv, bench_csv(results));
    if (!out_json.empty()) write_all(out_json, bench_json(results).dump(2) + "\n");
    if (ladder) {
        if (auto rep = scaling_report(results)) {
            std::cout << "log-log slope: " << rep->slope
                      << " (analytical reference " << rep->analytical_exponent << ")\n";
        } else {
            std::cout << "log-log slope: not enough distinct sizes\n";
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"factor multilinear polynomials over GF(2)"};
    app.require_subcommand(1);

    // factor
    auto* factor = app.add_subcommand("factor", "Factor a polynomial into irreducibles");
    std::string factor_in = "-";
    CommonOpts factor_common;
    bool factor_no_precheck = false, factor_json = false;
    factor->add_option("--in", factor_in, "Input file, '-' for stdin (text or JSON)");
    add_common(factor, factor_common);
    factor->add_flag("--no-precheck", factor_no_precheck,
                     "Skip the cheap irreducibility screening");
    factor->add_flag("--json", factor_json, "JSON output");

    // check
    auto* check = app.add_subcommand("check", "Precheck report without factoring");
    std::string check_in = "-";
    bool check_json = false;
    check->add_option("--in", check_in, "Input file, '-' for stdin (text or JSON)");
    check->add_flag("--json", check_json, "JSON output");

    // dnf
    auto* dnf = app.add_subcommand("dnf", "AND-decompose a DNF formula");
    std::string dnf_in = "-", dnf_mode = "monotone";
    bool dnf_minimize = false, dnf_json = false;
    CommonOpts dnf_common;
    dnf->add_option("--in", dnf_in, "Formula file, '-' for stdin");
    dnf->add_option("--mode", dnf_mode, "monotone or full")
        ->check(CLI::IsMember({"monotone", "full"}));
    dnf->add_flag("--minimize", dnf_minimize,
                  "Remove absorbed terms first (monotone mode)");
    add_common(dnf, dnf_common);
    dnf->add_flag("--json", dnf_json, "JSON output");

    // table
    auto* table = app.add_subcommand("table", "Cartesian decomposition of a CSV table");
    std::string table_csv = "-", table_merge;
    bool table_dedupe = false, table_json = false;
    CommonOpts table_common;
    table->add_option("--csv", table_csv, "CSV file with header row, '-' for stdin");
    table->add_option("--merge-constants", table_merge,
                      "Fold constant columns into a table: 'auto' or a 0-based index");
    table->add_flag("--dedupe", table_dedupe, "Collapse duplicate rows instead of failing");
    add_common(table, table_common);
    table->add_flag("--json", table_json, "JSON output");

    // gen
    auto* gen = app.add_subcommand("gen", "Generate a random instance");
    GenSpec spec;
    std::string gen_out = "-", gen_planted;
    gen->add_option("--n", spec.n, "Variable count")->required();
    gen->add_option("--m", spec.m, "Monomial count")->required();
    gen->add_option("--p", spec.p, "Per-variable inclusion probability (default 0.5)");
    gen->add_option("--seed", spec.seed, "PRNG seed (splitmix64)");
    gen->add_option("--planted", gen_planted,
                    "n1,m1,n2,m2: product of two random components with known factors");
    gen->add_option("--out", gen_out, "Output file, '-' for stdout");

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "Run drivers over a generated corpus");
    std::string bench_spec, bench_drivers = "modfd", bench_csv_path, bench_json_path;
    unsigned bench_repeat = 1, bench_workers = 1;
    bool bench_ladder = false;
    CommonOpts bench_common;
    bench_cmd->add_option("--spec", bench_spec, "JSON corpus file (array of generator specs)")
        ->required();
    bench_cmd->add_option("--drivers", bench_drivers, "Comma list: fd,modfd,gcd");
    bench_cmd->add_option("--repeat", bench_repeat, "Repeats per instance (best time wins)");
    bench_cmd->add_option("--workers", bench_workers, "Concurrent instances");
    bench_cmd->add_option("--out-csv", bench_csv_path, "Write results as CSV");
    bench_cmd->add_option("--out-json", bench_json_path, "Write results as JSON");
    bench_cmd->add_flag("--ladder", bench_ladder,
                        "Report the log-log runtime slope over the corpus");
    add_common(bench_cmd, bench_common);

    try {
        app.parse(argc, argv);

        if (factor->parsed())
            return run_factor(factor_in, factor_common, factor_no_precheck, factor_json);
        if (check->parsed()) return run_check(check_in, check_json);
        if (dnf->parsed())
            return run_dnf(dnf_in, dnf_mode, dnf_minimize, dnf_common, dnf_json);
        if (table->parsed())
            return run_table(table_csv, table_merge, table_dedupe, table_common, table_json);
        if (gen->parsed()) {
            if (!gen_planted.empty()) {
                PlantedSpec pl;
                std::stringstream ss(gen_planted);
                char c1, c2, c3;
                if (!(ss >> pl.n1 >> c1 >> pl.m1 >> c2 >> pl.n2 >> c3 >> pl.m2) ||
                    c1 != ',' || c2 != ',' || c3 != ',' || !(ss >> std::ws).eof())
                    throw CLI::ValidationError("--planted", "expected n1,m1,n2,m2");
                spec.planted = pl;
            }
            return run_gen(spec, gen_out);
        }
        if (bench_cmd->parsed())
            return run_bench(bench_spec, bench_drivers, bench_repeat, bench_workers,
                             bench_common, bench_csv_path, bench_json_path, bench_ladder);
        return 1;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    } catch (const f2x::defect_error& e) {
        std::cerr << "internal defect: " << e.what() << "\n";
        return 3;
    } catch (const f2x::data_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 3;
    }
}
