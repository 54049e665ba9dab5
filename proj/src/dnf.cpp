#include "f2x/dnf.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace f2x {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Literal> canonical_term(std::vector<Literal> lits) {
    std::sort(lits.begin(), lits.end());
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    return lits;
}

void canonicalize(DnfFormula& f) {
    for (auto& t : f.terms) t = canonical_term(std::move(t));
    std::sort(f.terms.begin(), f.terms.end());
    f.terms.erase(std::unique(f.terms.begin(), f.terms.end()), f.terms.end());
}

// a absorbs b when a's literal set is a subset of b's.
bool absorbs(const std::vector<Literal>& a, const std::vector<Literal>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

void validate(const DnfFormula& f) {
    if (f.terms.empty()) throw data_error("dnf: formula has no terms");
    if (f.mode == DnfMode::monotone) {
        for (const auto& t : f.terms)
            for (const Literal& l : t)
                if (l.negated) throw data_error("dnf: negative literal in monotone mode");
        return;
    }
    // full_dnf: one polarity of every variable in every term
    std::set<std::string> universe;
    for (const auto& t : f.terms)
        for (const Literal& l : t) universe.insert(l.name);
    for (const auto& t : f.terms) {
        std::set<std::string> seen;
        for (const Literal& l : t) {
            if (!seen.insert(l.name).second)
                throw data_error("dnf: variable " + l.name + " appears twice in one term");
        }
        if (seen.size() != universe.size())
            throw data_error("dnf: non-full term in full_dnf mode");
    }
    for (const std::string& n : universe) {
        if (n.size() > 4 && n.substr(n.size() - 4) == "_neg")
            throw data_error("dnf: identifier '" + n +
                             "' ends with the reserved suffix _neg");
    }
}

std::string tag_name(const Literal& l) { return l.negated ? l.name + "_neg" : l.name; }

} // namespace

DnfFormula parse_dnf(std::string_view text, DnfMode mode) {
    DnfFormula out;
    out.mode = mode;

    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };

    std::vector<Literal> term;
    bool expect_literal = true;
    bool any = false;

    auto finish_term = [&] {
        if (term.empty()) throw parse_error("dnf: empty term", pos);
        out.terms.push_back(std::move(term));
        term.clear();
    };

    skip_ws();
    if (pos == text.size()) throw parse_error("dnf: empty formula", pos);

    while (pos < text.size()) {
        skip_ws();
        if (pos == text.size()) break;
        char c = text[pos];
        if (expect_literal) {
            bool neg = false;
            if (c == '!') {
                neg = true;
                ++pos;
                skip_ws();
                if (pos == text.size()) throw parse_error("dnf: dangling '!'", pos);
                c = text[pos];
            }
            if (!ident_start(c)) throw parse_error("dnf: expected a literal", pos);
            std::size_t start = pos;
            while (pos < text.size() && ident_char(text[pos])) ++pos;
            term.push_back({std::string(text.substr(start, pos - start)), neg});
            any = true;
            expect_literal = false;
        } else if (c == '&') {
            ++pos;
            expect_literal = true;
        } else if (c == '|') {
            ++pos;
            finish_term();
            expect_literal = true;
        } else {
            throw parse_error("dnf: expected '&' or '|'", pos);
        }
    }
    if (expect_literal || !any) throw parse_error("dnf: dangling operator", pos);
    finish_term();

    canonicalize(out);
    validate(out);
    return out;
}

std::string format_dnf(const DnfFormula& f) {
    std::string out;
    for (std::size_t i = 0; i < f.terms.size(); ++i) {
        if (i > 0) out += " | ";
        for (std::size_t j = 0; j < f.terms[i].size(); ++j) {
            if (j > 0) out += " & ";
            if (f.terms[i][j].negated) out += "!";
            out += f.terms[i][j].name;
        }
    }
    return out;
}

DnfFormula minimize_monotone(const DnfFormula& f) {
    if (f.mode != DnfMode::monotone)
        throw data_error("minimize_monotone: monotone formulas only");
    DnfFormula out = f;
    canonicalize(out);
    std::vector<std::vector<Literal>> kept;
    for (const auto& t : out.terms) {
        bool absorbed = false;
        for (const auto& other : out.terms) {
            if (&other == &t) continue;
            // strict subset absorbs; among equals keep the first occurrence
            if (absorbs(other, t) && other != t) {
                absorbed = true;
                break;
            }
        }
        if (!absorbed) kept.push_back(t);
    }
    out.terms = std::move(kept);
    return out;
}

Polynomial dnf_to_polynomial(const DnfFormula& formula, bool minimize) {
    DnfFormula f = formula;
    canonicalize(f);
    validate(f);
    if (f.mode == DnfMode::monotone) {
        DnfFormula minimal = minimize_monotone(f);
        if (!minimize && minimal.terms != f.terms)
            throw data_error(
                "dnf_to_polynomial: monotone formula is not absorption-minimal; "
                "pass minimize=true");
        f = std::move(minimal);
    }

    std::vector<std::string> names;
    for (const auto& t : f.terms)
        for (const Literal& l : t)
            names.push_back(f.mode == DnfMode::full_dnf ? tag_name(l) : l.name);
    std::sort(names.begin(), names.end());
    names.erase(std::unique(names.begin(), names.end()), names.end());
    VarTablePtr vars = VarTable::make(std::move(names));

    std::vector<Monomial> ms;
    ms.reserve(f.terms.size());
    for (const auto& t : f.terms) {
        Monomial m(vars->stride());
        for (const Literal& l : t)
            m.set(vars->index_of(f.mode == DnfMode::full_dnf ? tag_name(l) : l.name));
        ms.push_back(std::move(m));
    }
    // Terms are distinct, so distinct monomials; set semantics keeps them all.
    return Polynomial::from_monomial_set(std::move(vars), ms);
}

std::vector<DnfFormula> decompose_dnf(const DnfFormula& f, bool minimize,
                                      const FactorOptions& opt) {
    Polynomial poly = dnf_to_polynomial(f, minimize);
    Factorization fact = factorize(poly, opt);

    auto back_to_formula = [&](const Polynomial& g) {
        DnfFormula out;
        out.mode = f.mode;
        for (std::size_t i = 0; i < g.monomial_count(); ++i) {
            std::vector<Literal> term;
            bits::for_each_set_bit(g.row(i), [&](std::size_t v) {
                std::string name = g.vars().name(static_cast<std::uint32_t>(v));
                if (f.mode == DnfMode::full_dnf && name.size() > 4 &&
                    name.substr(name.size() - 4) == "_neg") {
                    term.push_back({name.substr(0, name.size() - 4), true});
                } else {
                    term.push_back({std::move(name), false});
                }
            });
            if (term.empty())
                throw defect_error("decompose_dnf: factor contains the constant monomial");
            out.terms.push_back(canonical_term(std::move(term)));
        }
        std::sort(out.terms.begin(), out.terms.end());
        return out;
    };

    std::vector<DnfFormula> components;
    for (const Polynomial& g : fact.trivial) {
        // x+1 factors cannot arise: every encoded monomial is non-constant
        // with uniform sign structure, so only single-variable factors occur.
        if (g.monomial_count() != 1)
            throw defect_error("decompose_dnf: unexpected affine trivial factor");
        components.push_back(back_to_formula(g));
    }
    for (const Polynomial& g : fact.factors) components.push_back(back_to_formula(g));
    return components;
}

} // namespace f2x
