#pragma once

// Command-line surface. Instance configs are JSON:
//   {"Q": [[c0, c1, ...], ...],        ascending, constant first
//    "A": [a1, ...],
//    "rhs": {"kind": "binary_form",    "coeffs": [a_d, ..., a_0]}      descending
//         | {"kind": "factored_form",  "factors": [{"coeffs": [...], "exponent": e}, ...],
//                                      "composite": [...]}             composite optional
//         | {"kind": "univariate",     "coeffs": [c0, c1, ...]}        ascending
//         | {"kind": "monomial_power", "d": d},
//    "flags": {"assume_irreducible": false, "allow_zero_n": false}}
// Integers may be JSON numbers or decimal strings (for values past 64 bits).

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "facdio/abcradical.hpp"
#include "facdio/certify.hpp"
#include "facdio/search.hpp"

namespace facdio::cli {

/// Throws PreconditionError with "line L, column C: ..." for malformed JSON
/// or "field <path>: ..." for schema problems.
EquationInstance parse_instance(const std::string& doc);

/// Integers that fit in 64 bits become JSON numbers, larger ones strings.
nlohmann::ordered_json bigint_json(const BigInt& v);

nlohmann::ordered_json search_report_to_json(const SearchReport& report);
std::string search_report_csv(const SearchReport& report, std::size_t r);
nlohmann::ordered_json monomial_decision_to_json(const MonomialDecision& decision);
/// Each factor reports "irreducible": "witnessed", "assumed" (instance flag) or "unproven".
nlohmann::ordered_json analyze_form_json(const FormFactorization& form, std::uint64_t limit, unsigned jobs,
                                         bool assume_irreducible = false);

/// Runs one subcommand; args excludes the program name. Returns the exit
/// code: 0 done, 1 usage or config error, 2 internal invariant violation.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace facdio::cli
