#include <algorithm>
#include <map>
#include <set>

#include "f2x/table.hpp"

namespace f2x {

namespace {

void validate_shape(const DataTable& t) {
    if (t.attributes.empty()) throw data_error("table: no attributes");
    if (t.rows.empty()) throw data_error("table: no rows");
    for (std::size_t i = 0; i < t.attributes.size(); ++i) {
        if (t.attributes[i].empty()) throw data_error("table: empty attribute name");
        for (std::size_t j = 0; j < i; ++j)
            if (t.attributes[j] == t.attributes[i])
                throw data_error("table: duplicate attribute '" + t.attributes[i] + "'");
    }
    for (const auto& row : t.rows)
        if (row.size() != t.attributes.size())
            throw data_error("table: row arity " + std::to_string(row.size()) +
                             " does not match attribute count " +
                             std::to_string(t.attributes.size()));
}

std::vector<std::string> sorted_rows_key(const DataTable& t) {
    std::vector<std::string> keys;
    keys.reserve(t.rows.size());
    for (const auto& row : t.rows) {
        std::string k;
        for (const auto& cell : row) {
            k += std::to_string(cell.size());
            k += ':';
            k += cell;
        }
        keys.push_back(std::move(k));
    }
    std::sort(keys.begin(), keys.end());
    return keys;
}

} // namespace

EncodedTable table_to_polynomial(const DataTable& t, bool dedupe) {
    validate_shape(t);

    std::vector<std::vector<std::string>> rows = t.rows;
    std::sort(rows.begin(), rows.end());
    auto dup = std::adjacent_find(rows.begin(), rows.end());
    if (dup != rows.end()) {
        if (!dedupe) {
            std::string cells;
            for (const auto& c : *dup) cells += (cells.empty() ? "" : ", ") + c;
            throw data_error("table: duplicate row (" + cells +
                             "): identical rows cancel in the encoding; "
                             "pass dedupe (--dedupe) to collapse them");
        }
        rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    }

    // distinct (attribute, value) pairs in (attribute index, value) order
    std::map<std::pair<std::uint32_t, std::string>, std::uint32_t> var_of;
    for (const auto& row : rows)
        for (std::size_t a = 0; a < row.size(); ++a)
            var_of.try_emplace({static_cast<std::uint32_t>(a), row[a]}, 0);

    TableEncoding enc;
    enc.attributes = t.attributes;
    enc.cells.reserve(var_of.size());
    std::vector<std::string> names;
    names.reserve(var_of.size());
    std::set<std::string> taken;
    std::uint32_t next = 0;
    for (auto& [pair, index] : var_of) {
        index = next++;
        enc.cells.push_back(pair);
        std::string base = pair.second + "_" + t.attributes[pair.first];
        std::string name = base;
        for (int k = 2; !taken.insert(name).second; ++k)
            name = base + "#" + std::to_string(k);
        names.push_back(std::move(name));
    }
    enc.vars = VarTable::make(std::move(names));

    std::vector<Monomial> ms;
    ms.reserve(rows.size());
    for (const auto& row : rows) {
        Monomial m(enc.vars->stride());
        for (std::size_t a = 0; a < row.size(); ++a)
            m.set(var_of.at({static_cast<std::uint32_t>(a), row[a]}));
        ms.push_back(std::move(m));
    }
    Polynomial poly = Polynomial::from_monomial_set(enc.vars, ms);
    if (poly.monomial_count() != rows.size())
        throw defect_error("table encoding collapsed distinct rows");
    return {std::move(poly), std::move(enc)};
}

DataTable polynomial_to_table(const Polynomial& f, const TableEncoding& enc) {
    if (!same_table(f.table(), enc.vars))
        throw data_error("polynomial_to_table: foreign variable table");

    // attribute set of the occurring variables, in input header order
    std::vector<bits::Word> occurring = variable_mask(f);
    std::vector<bool> has_attr(enc.attributes.size(), false);
    bits::for_each_set_bit(occurring,
                           [&](std::size_t v) { has_attr[enc.cells[v].first] = true; });

    DataTable out;
    std::vector<std::size_t> slot_of(enc.attributes.size(), SIZE_MAX);
    for (std::size_t a = 0; a < enc.attributes.size(); ++a) {
        if (!has_attr[a]) continue;
        slot_of[a] = out.attributes.size();
        out.attributes.push_back(enc.attributes[a]);
    }

    for (std::size_t i = 0; i < f.monomial_count(); ++i) {
        std::vector<const std::string*> row(out.attributes.size(), nullptr);
        bits::for_each_set_bit(f.row(i), [&](std::size_t v) {
            const auto& [attr, value] = enc.cells[v];
            std::size_t slot = slot_of[attr];
            if (row[slot] != nullptr)
                throw defect_error("polynomial_to_table: two values for attribute '" +
                                   enc.attributes[attr] + "' in one monomial");
            row[slot] = &value;
        });
        std::vector<std::string> cells;
        cells.reserve(row.size());
        for (std::size_t slot = 0; slot < row.size(); ++slot) {
            if (row[slot] == nullptr)
                throw defect_error("polynomial_to_table: monomial misses attribute '" +
                                   out.attributes[slot] + "'");
            cells.push_back(*row[slot]);
        }
        out.rows.push_back(std::move(cells));
    }
    std::sort(out.rows.begin(), out.rows.end());
    return out;
}

TableDecomposition decompose_table(const DataTable& t, const TableOptions& opt) {
    EncodedTable in = table_to_polynomial(t, opt.dedupe);
    Factorization fact = factorize(in.poly, opt.factor);

    TableDecomposition out;
    for (const Polynomial& g : fact.trivial) {
        // x+1 cannot divide a table polynomial: all its monomials share one
        // length (the arity), while (x+1)*G mixes two lengths.
        if (g.monomial_count() != 1 || bits::popcount(g.row(0)) != 1)
            throw defect_error("decompose_table: affine trivial factor");
        std::size_t v = *bits::lowest_set(g.row(0));
        const auto& [attr, value] = in.enc.cells[v];
        out.constants.push_back({in.enc.attributes[attr], value});
    }
    for (const Polynomial& g : fact.factors)
        out.tables.push_back(polynomial_to_table(g, in.enc));

    // fold constant columns into a table per the merge policy
    std::size_t target = SIZE_MAX;
    if (!out.constants.empty()) {
        switch (opt.merge.kind) {
            case MergePolicy::Kind::none: break;
            case MergePolicy::Kind::smallest:
                if (out.tables.empty()) {
                    // all columns constant (1-row input): the constants ARE the table
                    out.tables.emplace_back();
                    out.tables.back().rows.emplace_back();
                    target = 0;
                } else {
                    target = 0;
                    for (std::size_t i = 1; i < out.tables.size(); ++i)
                        if (out.tables[i].rows.size() < out.tables[target].rows.size())
                            target = i;
                }
                break;
            case MergePolicy::Kind::index:
                if (opt.merge.index >= out.tables.size())
                    throw data_error("merge target " + std::to_string(opt.merge.index) +
                                     " out of range: " + std::to_string(out.tables.size()) +
                                     " table(s)");
                target = opt.merge.index;
                break;
        }
    }
    if (target != SIZE_MAX) {
        DataTable& tbl = out.tables[target];
        for (const ConstantColumn& c : out.constants) {
            tbl.attributes.push_back(c.attribute);
            for (auto& row : tbl.rows) row.push_back(c.value);
        }
        out.constants.clear();
        // restore input header order on the widened table
        std::vector<std::size_t> perm;
        for (const std::string& a : t.attributes) {
            auto it = std::find(tbl.attributes.begin(), tbl.attributes.end(), a);
            if (it != tbl.attributes.end())
                perm.push_back(static_cast<std::size_t>(it - tbl.attributes.begin()));
        }
        DataTable ordered;
        for (std::size_t p : perm) ordered.attributes.push_back(tbl.attributes[p]);
        for (const auto& row : tbl.rows) {
            std::vector<std::string> cells;
            cells.reserve(perm.size());
            for (std::size_t p : perm) cells.push_back(row[p]);
            ordered.rows.push_back(std::move(cells));
        }
        std::sort(ordered.rows.begin(), ordered.rows.end());
        tbl = std::move(ordered);
    }

    // reconstruction check, always on: the cross product of the parts plus
    // the constant columns must reproduce the input row set exactly
    std::size_t expect = 1;
    for (const DataTable& tbl : out.tables) expect *= tbl.rows.size();
    std::size_t input_rows = in.poly.monomial_count(); // post-dedupe count
    if (expect != input_rows)
        throw defect_error("decompose_table: row count mismatch after factorization");

    DataTable rebuilt;
    for (const DataTable& tbl : out.tables)
        rebuilt.attributes.insert(rebuilt.attributes.end(), tbl.attributes.begin(),
                                  tbl.attributes.end());
    for (const ConstantColumn& c : out.constants) rebuilt.attributes.push_back(c.attribute);
    rebuilt.rows.emplace_back();
    for (const DataTable& tbl : out.tables) {
        std::vector<std::vector<std::string>> next;
        next.reserve(rebuilt.rows.size() * tbl.rows.size());
        for (const auto& head : rebuilt.rows) {
            for (const auto& tail : tbl.rows) {
                std::vector<std::string> row = head;
                row.insert(row.end(), tail.begin(), tail.end());
                next.push_back(std::move(row));
            }
        }
        rebuilt.rows = std::move(next);
    }
    for (const ConstantColumn& c : out.constants)
        for (auto& row : rebuilt.rows) row.push_back(c.value);

    // align rebuilt columns to the input order before comparing row sets
    std::vector<std::size_t> perm(t.attributes.size(), SIZE_MAX);
    for (std::size_t a = 0; a < t.attributes.size(); ++a) {
        auto it = std::find(rebuilt.attributes.begin(), rebuilt.attributes.end(),
                            t.attributes[a]);
        if (it == rebuilt.attributes.end())
            throw defect_error("decompose_table: attribute '" + t.attributes[a] +
                               "' missing from the decomposition");
        perm[a] = static_cast<std::size_t>(it - rebuilt.attributes.begin());
    }
    DataTable aligned;
    aligned.attributes = t.attributes;
    for (const auto& row : rebuilt.rows) {
        std::vector<std::string> cells;
        cells.reserve(perm.size());
        for (std::size_t p : perm) cells.push_back(row[p]);
        aligned.rows.push_back(std::move(cells));
    }

    DataTable deduped = t;
    if (opt.dedupe) {
        std::sort(deduped.rows.begin(), deduped.rows.end());
        deduped.rows.erase(std::unique(deduped.rows.begin(), deduped.rows.end()),
                           deduped.rows.end());
    }
    if (sorted_rows_key(aligned) != sorted_rows_key(deduped))
        throw defect_error("decompose_table: cross product does not reproduce the input");

    return out;
}

} // namespace f2x
