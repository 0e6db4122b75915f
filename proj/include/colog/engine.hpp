#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "colog/ast.hpp"
#include "colog/compiler.hpp"
#include "colog/parallel.hpp"
#include "colog/relation.hpp"

namespace colog {

/// One delta-rewritten variant of a rule plan: source `delta_source` reads
/// the DELTA version, every other occurrence reads FULL. kNoDelta marks the
/// single variant of a rule without IDB body atoms; it runs only in the
/// first iteration.
struct PlanVariant {
    static constexpr std::size_t kNoDelta = static_cast<std::size_t>(-1);

    const RulePlan* plan = nullptr;
    std::size_t delta_source = kNoDelta;

    bool edb_only() const { return delta_source == kNoDelta; }
};

/// Semi-naive decomposition of one plan: one variant per IDB body
/// occurrence, or a single run-once variant when there is none.
std::vector<PlanVariant> delta_rewrite(const RulePlan& plan,
                                       const std::set<std::string>& idb_relations);

struct RelationStats {
    std::string relation;
    std::size_t delta_rows = 0;
    std::size_t full_rows = 0; // after the merge
    std::size_t merges = 0;    // merge operations during this iteration
};

struct IterationStats {
    std::size_t index = 0;
    double elapsed_ms = 0.0;
    std::vector<RelationStats> relations;
};

/// Relation map plus evaluation bookkeeping. Between iterations: FULL is the
/// union of every delta produced so far plus the EDB, DELTA is exactly the
/// rows merged at the end of the previous iteration, NEW is empty.
struct EvaluationState {
    std::map<std::string, Relation> relations;
    std::size_t iterations = 0;
    std::vector<IterationStats> stats;

    const Relation& at(const std::string& name) const { return relations.at(name); }
};

/// Initial state: every relation's FULL is its deduplicated EDB facts,
/// DELTA equals FULL, NEW is empty.
EvaluationState seed(const Program& program, const FactMap& facts, const Executor& exec);

/// Run one plan over explicit source versions; returns the projected head
/// block, one raw column per head position. Used by the iteration driver
/// and by compilation-soundness tests.
std::vector<std::vector<Value>> execute_plan(
    const RulePlan& plan,
    const std::function<const Version&(std::size_t source_index)>& resolve,
    const Executor& exec);

/// One semi-naive iteration: evaluate the given variants, pool outputs per
/// head relation into NEW, dedup internally, deduplicate against FULL,
/// difference into the delta, and merge exactly once per head relation.
/// Returns true iff any relation produced a non-empty delta.
bool run_iteration(EvaluationState& state, const std::vector<PlanVariant>& variants,
                   std::size_t iteration, const Executor& exec);

/// Evaluate a validated program to fixpoint.
EvaluationState evaluate(const Program& program, const FactMap& facts, const Executor& exec);

/// Head relations of the program (the IDB).
std::set<std::string> idb_relations(const Program& program);

} // namespace colog
