#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "f2x/factorizer.hpp"
#include "f2x/generator.hpp"
#include "f2x/precheck.hpp"
#include "f2x/table.hpp"

// JSON forms of the value types. Polynomials travel as
//   {"vars": ["u","v",...], "monomials": [[0,2],[1,2],...]}
// with monomials as ascending index lists into "vars" and [] for the
// constant monomial. Factor lists use canonical text (see format()), which
// parses back losslessly against the recorded variable table.

namespace f2x {

nlohmann::json poly_to_json(const Polynomial& f);
Polynomial poly_from_json(const nlohmann::json& j);

/// {"trivial": ["x0", "x3 + 1"], "factors": ["x1 + x2", ...]}
nlohmann::json factorization_to_json(const Factorization& f);

nlohmann::json precheck_to_json(const PrecheckReport& r, const VarTable& vars);

nlohmann::json table_to_json(const DataTable& t);
DataTable table_from_json(const nlohmann::json& j);
nlohmann::json decomposition_to_json(const TableDecomposition& d);

nlohmann::json genspec_to_json(const GenSpec& s);
GenSpec genspec_from_json(const nlohmann::json& j);

/// Generator output document: the spec (algorithm and seed included), the
/// polynomial, and the planted factors when present.
nlohmann::json gen_result_to_json(const GenSpec& spec, const GenResult& r);

/// Parses text as JSON; malformed input is a data_error.
nlohmann::json parse_json(std::string_view text);

/// Reads a polynomial from either the plain text grammar or a JSON document
/// (a polynomial object, or any object carrying a "polynomial" member, such
/// as generator output). The first non-space byte decides.
Polynomial read_polynomial(std::istream& in);

} // namespace f2x
