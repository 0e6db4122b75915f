#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "colog/ast.hpp"

namespace colog {

/// Parse a Datalog program.
///
/// Syntax: facts `edge(1, 2).`, rules `reach(x, z) :- edge(x, y), reach(y, z).`,
/// inequality guards `x != y` among the body items, `//` and `%` line
/// comments, integer or double-quoted string constants. Relation names start
/// with a lowercase letter; arities are inferred from first use and checked
/// on every later use.
///
/// Throws DiagnosticError (with line/column) on syntax errors, arity
/// mismatches, out-of-range integers, non-ground facts, and unsupported
/// features (negation, comparison guards other than !=).
Program parse_program(std::string_view text);

/// Render a program back to concrete syntax; reparsing the result yields a
/// structurally equal program.
std::string print_program(const Program& program);

/// Semantic checks on a parsed (or hand-built) program: arity consistency,
/// range restriction, guard variables bound in the body, variable-only rule
/// heads, ground facts, and cross-product-freedom under the left-to-right
/// join scheme. Empty result means the program is accepted.
std::vector<Diagnostic> validate_program(const Program& program);

} // namespace colog
