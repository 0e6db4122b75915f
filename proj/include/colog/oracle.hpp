#pragma once

#include <map>
#include <set>
#include <string>

#include "colog/ast.hpp"
#include "colog/types.hpp"

namespace colog::oracle {

/// Relation name -> set of rows. Set semantics by construction.
using RowSet = std::map<std::string, std::set<Row>>;

/// One application of a rule over the current rows: nested-loop matching of
/// all body atoms with constant and guard checks, then head projection.
/// Returns the derived head tuples only.
std::set<Row> single_step(const Rule& rule, const RowSet& rows);

/// Least model of the positive program: repeat the full immediate
/// consequence of every rule until nothing new appears.
///
/// This evaluator shares only the AST with the engine — none of the column
/// or kernel code — so it serves as an independent ground truth.
RowSet naive_evaluate(const Program& program, const FactMap& edb);

} // namespace colog::oracle
