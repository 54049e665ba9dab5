#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "f2x/factorizer.hpp"
#include "f2x/polynomial.hpp"

namespace f2x {

/// Relational table: ordered attribute names plus a duplicate-free row set.
/// Cell values are opaque strings.
struct DataTable {
    std::vector<std::string> attributes;
    std::vector<std::vector<std::string>> rows; // each of attribute arity

    bool operator==(const DataTable&) const = default;
};

// ---- CSV ---------------------------------------------------------------
//
// RFC-4180 subset. First record is the header. Cells may be quoted; inside
// quotes a doubled quote escapes one quote and commas/newlines are literal.
// Unquoted cells are trimmed of surrounding spaces and tabs (quote a cell to
// keep them). Blank lines are skipped. Line endings: LF or CRLF.

DataTable read_csv(std::istream& in);
DataTable read_csv_file(const std::string& path);
std::string write_csv(const DataTable& t);

// ---- Encoding ----------------------------------------------------------

/// Bidirectional map between polynomial variables and (attribute, value)
/// cell pairs. Decoding goes through `cells`, never through display names,
/// so arbitrary value strings stay unambiguous. Display names follow the
/// "value_attribute" convention with a "#k" suffix on the rare collision.
struct TableEncoding {
    VarTablePtr vars;
    std::vector<std::string> attributes; // input header order
    std::vector<std::pair<std::uint32_t, std::string>> cells; // per variable:
                                                              // (attribute index, value)
};

struct EncodedTable {
    Polynomial poly;
    TableEncoding enc;
};

/// One monomial per row, one variable per distinct (attribute, value) pair.
/// Duplicate rows would cancel mod 2 and are rejected; with dedupe set they
/// collapse to one occurrence instead.
EncodedTable table_to_polynomial(const DataTable& t, bool dedupe = false);

/// Decodes monomials back into rows. The attribute set is read off the
/// occurring variables and ordered per the encoding; every monomial must
/// hit each of those attributes exactly once (defect_error otherwise).
/// Rows come out sorted.
DataTable polynomial_to_table(const Polynomial& f, const TableEncoding& enc);

// ---- Decomposition -----------------------------------------------------

struct ConstantColumn {
    std::string attribute;
    std::string value;

    bool operator==(const ConstantColumn&) const = default;
};

/// Cartesian factorization of a table: the unordered cross product of
/// `tables`, extended by the constant columns, equals the input row set.
/// Attribute sets of the parts are pairwise disjoint and cover the input.
struct TableDecomposition {
    std::vector<DataTable> tables;
    std::vector<ConstantColumn> constants;
};

/// What to do with single-valued columns: keep them separate, fold them into
/// the table with the fewest rows, or fold them into tables[index].
struct MergePolicy {
    enum class Kind : std::uint8_t { none, smallest, index };
    Kind kind = Kind::none;
    std::size_t index = 0;
};

struct TableOptions {
    bool dedupe = false;
    MergePolicy merge{};
    FactorOptions factor{};
};

/// Encodes, factorizes, and maps factors back: trivial factors become
/// constant columns, every other factor a table. The cross product of the
/// results is re-checked against the input rows before returning; any
/// mismatch is a defect_error.
TableDecomposition decompose_table(const DataTable& t, const TableOptions& opt = {});

} // namespace f2x
