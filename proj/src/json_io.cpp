#include <cctype>
#include <istream>
#include <sstream>

#include "f2x/json_io.hpp"

namespace f2x {

using nlohmann::json;

nlohmann::json parse_json(std::string_view text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw data_error("malformed JSON input");
    return j;
}

json poly_to_json(const Polynomial& f) {
    json monomials = json::array();
    for (std::size_t i = 0; i < f.monomial_count(); ++i) {
        json vars = json::array();
        bits::for_each_set_bit(f.row(i), [&](std::size_t v) { vars.push_back(v); });
        monomials.push_back(std::move(vars));
    }
    return {{"vars", f.vars().names()}, {"monomials", std::move(monomials)}};
}

Polynomial poly_from_json(const json& j) {
    try {
        VarTablePtr vars = VarTable::make(j.at("vars").get<std::vector<std::string>>());
        std::vector<Monomial> ms;
        for (const json& entry : j.at("monomials")) {
            Monomial m(vars->stride());
            for (const json& idx : entry) {
                auto v = idx.get<std::uint64_t>();
                if (v >= vars->size())
                    throw data_error("polynomial JSON: variable index " +
                                     std::to_string(v) + " out of range");
                m.set(static_cast<std::uint32_t>(v));
            }
            ms.push_back(std::move(m));
        }
        return Polynomial::from_monomials_mod2(std::move(vars), ms);
    } catch (const json::exception& e) {
        throw data_error(std::string("polynomial JSON: ") + e.what());
    }
}

json factorization_to_json(const Factorization& f) {
    json trivial = json::array();
    for (const Polynomial& g : f.trivial) trivial.push_back(format(g));
    json factors = json::array();
    for (const Polynomial& g : f.factors) factors.push_back(format(g));
    return {{"trivial", std::move(trivial)}, {"factors", std::move(factors)}};
}

json precheck_to_json(const PrecheckReport& r, const VarTable& vars) {
    json mu = json::object();
    for (std::size_t v = 0; v < r.mu.size(); ++v)
        if (r.mu[v] > 0) mu[vars.name(static_cast<std::uint32_t>(v))] = r.mu[v];
    json classes = json::array();
    for (const auto& cls : r.cooccurrence_classes) {
        json names = json::array();
        for (std::uint32_t v : cls) names.push_back(vars.name(v));
        classes.push_back(std::move(names));
    }
    return {{"monomial_count", r.monomial_count},
            {"mu", std::move(mu)},
            {"gcd_condition_holds", r.gcd_condition_holds},
            {"cooccurrence_classes", std::move(classes)},
            {"verdict", r.verdict == PrecheckReport::Verdict::certified_irreducible
                            ? "certified_irreducible"
                            : "inconclusive"}};
}

json table_to_json(const DataTable& t) {
    return {{"attributes", t.attributes}, {"rows", t.rows}};
}

DataTable table_from_json(const json& j) {
    try {
        DataTable t;
        t.attributes = j.at("attributes").get<std::vector<std::string>>();
        t.rows = j.at("rows").get<std::vector<std::vector<std::string>>>();
        return t;
    } catch (const json::exception& e) {
        throw data_error(std::string("table JSON: ") + e.what());
    }
}

json decomposition_to_json(const TableDecomposition& d) {
    json tables = json::array();
    for (const DataTable& t : d.tables) tables.push_back(table_to_json(t));
    json constants = json::array();
    for (const ConstantColumn& c : d.constants)
        constants.push_back({{"attribute", c.attribute}, {"value", c.value}});
    return {{"tables", std::move(tables)}, {"constants", std::move(constants)}};
}

json genspec_to_json(const GenSpec& s) {
    json j = {{"algorithm", "splitmix64"},
              {"n", s.n},
              {"m", s.m},
              {"p", s.p},
              {"seed", s.seed}};
    if (s.planted)
        j["planted"] = {{"n1", s.planted->n1},
                        {"m1", s.planted->m1},
                        {"n2", s.planted->n2},
                        {"m2", s.planted->m2}};
    return j;
}

GenSpec genspec_from_json(const json& j) {
    try {
        if (j.contains("algorithm") && j.at("algorithm") != "splitmix64")
            throw data_error("generator spec: unknown algorithm '" +
                             j.at("algorithm").get<std::string>() + "'");
        GenSpec s;
        s.n = j.at("n").get<std::uint32_t>();
        s.m = j.at("m").get<std::size_t>();
        s.p = j.value("p", 0.5);
        s.seed = j.value("seed", std::uint64_t{0});
        if (j.contains("planted")) {
            const json& p = j.at("planted");
            s.planted = PlantedSpec{p.at("n1").get<std::uint32_t>(),
                                    p.at("m1").get<std::size_t>(),
                                    p.at("n2").get<std::uint32_t>(),
                                    p.at("m2").get<std::size_t>()};
        }
        return s;
    } catch (const json::exception& e) {
        throw data_error(std::string("generator spec JSON: ") + e.what());
    }
}

json gen_result_to_json(const GenSpec& spec, const GenResult& r) {
    json j = {{"generator", genspec_to_json(spec)}, {"polynomial", poly_to_json(r.poly)}};
    if (!r.planted_factors.empty()) {
        json planted = json::array();
        for (const Polynomial& g : r.planted_factors) planted.push_back(format(g));
        j["planted_factors"] = std::move(planted);
    }
    return j;
}

Polynomial read_polynomial(std::istream& in) {
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();

    std::size_t i = 0;
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i == text.size()) throw data_error("empty polynomial input");
    if (text[i] != '{') return parse(text);

    json j = parse_json(text);
    if (j.contains("polynomial")) return poly_from_json(j.at("polynomial"));
    return poly_from_json(j);
}

} // namespace f2x
