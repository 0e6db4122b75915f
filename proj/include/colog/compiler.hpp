#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "colog/ast.hpp"
#include "colog/types.hpp"

namespace colog {

/// Position of a column within the join intermediate: column `col` of body
/// atom `source`.
struct ColRef {
    std::size_t source = 0;
    std::size_t col = 0;

    bool operator==(const ColRef&) const = default;
};

/// Execution plan for one rule over the relational-algebra kernels.
///
/// Body atoms join left to right in textual order: the first shared variable
/// of each new atom is the hash-join column, further shared variables become
/// residual equality filters, constants become pre-join selections, and
/// != guards run over the projected candidate rows.
struct RulePlan {
    struct Source {
        std::string relation;
        std::size_t arity = 0;
        std::vector<std::pair<std::size_t, Value>> const_selects; // (col, value)
        std::vector<std::pair<std::size_t, std::size_t>> self_eqs; // repeated variable

        bool constrained() const { return !const_selects.empty() || !self_eqs.empty(); }
    };

    struct JoinStep {
        std::size_t right_source = 0; // index into sources, >= 1
        ColRef left;                  // probe column in the accumulated intermediate
        std::size_t right_col = 0;    // hash column of the right atom
        std::vector<std::pair<ColRef, std::size_t>> residual_eq;
    };

    std::string head_relation;
    std::size_t head_arity = 0;
    std::vector<Source> sources;  // textual body order
    std::vector<JoinStep> joins;  // joins[k] attaches sources[k + 1]

    /// Projection of the final intermediate: the head columns first, then
    /// any extra columns guards need. Guards index into this layout.
    std::vector<ColRef> output_cols;
    std::vector<std::pair<std::size_t, std::size_t>> guard_neq;
};

/// Compile one validated rule. String constants must already be resolved.
/// Throws DiagnosticError on cross products and unresolved constants.
RulePlan compile_rule(const Rule& rule, const Program& program);

/// Compile every rule, in program order.
std::vector<RulePlan> compile_program(const Program& program);

} // namespace colog
