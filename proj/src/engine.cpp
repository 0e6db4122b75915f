#include "colog/engine.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <stdexcept>

#include "colog/kernels.hpp"
#include "colog/parser.hpp"

namespace colog {

namespace {

// Tuple ids of the version passing the source's constant selections and
// repeated-variable equalities, ascending.
std::vector<TupleId> selected_ids(const Version& ver, const RulePlan::Source& src) {
    const std::size_t n = ver.rows();
    std::vector<TupleId> ids;
    if (!src.const_selects.empty()) {
        const auto& [col0, val0] = src.const_selects.front();
        ids = select_eq(ver.col(col0), val0);
    } else {
        ids.resize(n);
        std::iota(ids.begin(), ids.end(), TupleId{0});
    }
    auto keeps = [&](TupleId id) {
        for (std::size_t k = 1; k < src.const_selects.size(); ++k) {
            const auto& [col, val] = src.const_selects[k];
            if (ver.col(col).value_at(id) != val) return false;
        }
        for (const auto& [ca, cb] : src.self_eqs)
            if (ver.col(ca).value_at(id) != ver.col(cb).value_at(id)) return false;
        return true;
    };
    if (src.const_selects.size() > 1 || !src.self_eqs.empty())
        std::erase_if(ids, [&](TupleId id) { return !keeps(id); });
    return ids;
}

// Per-source id arrays aligned by intermediate row.
struct Intermediate {
    std::vector<std::vector<TupleId>> ids;

    std::size_t rows() const { return ids.empty() ? 0 : ids[0].size(); }
};

std::vector<TupleId> permute(const std::vector<TupleId>& src, const std::vector<TupleId>& sel,
                             const Executor& exec) {
    std::vector<TupleId> out(sel.size());
    exec.for_each(sel.size(), [&](std::size_t k) { out[k] = src[sel[k]]; });
    return out;
}

} // namespace

std::vector<PlanVariant> delta_rewrite(const RulePlan& plan,
                                       const std::set<std::string>& idb) {
    std::vector<PlanVariant> variants;
    for (std::size_t s = 0; s < plan.sources.size(); ++s)
        if (idb.count(plan.sources[s].relation)) variants.push_back({&plan, s});
    if (variants.empty()) variants.push_back({&plan, PlanVariant::kNoDelta});
    return variants;
}

std::set<std::string> idb_relations(const Program& program) {
    std::set<std::string> idb;
    for (const Rule& r : program.rules) idb.insert(r.head.relation);
    return idb;
}

std::vector<std::vector<Value>> execute_plan(
    const RulePlan& plan,
    const std::function<const Version&(std::size_t source_index)>& resolve,
    const Executor& exec) {
    std::vector<std::vector<Value>> empty_block(plan.head_arity);
    for (std::size_t s = 0; s < plan.sources.size(); ++s)
        if (resolve(s).rows() == 0) return empty_block;

    Intermediate inter;
    inter.ids.push_back(selected_ids(resolve(0), plan.sources[0]));
    if (inter.rows() == 0) return empty_block;

    for (const RulePlan::JoinStep& step : plan.joins) {
        const Version& right = resolve(step.right_source);
        const RulePlan::Source& src = plan.sources[step.right_source];

        // Probe values: the left join column, materialized per intermediate row.
        const Version& left_ver = resolve(step.left.source);
        std::vector<Value> probe =
            left_ver.col(step.left.col).gather(inter.ids[step.left.source], exec);

        IdPairSet pairs;
        if (src.constrained()) {
            // Pre-join selection: index only the surviving rows and map the
            // matches back to original ids afterwards.
            std::vector<TupleId> sel = selected_ids(right, src);
            Column sub = Column::build(right.col(step.right_col).gather(sel, exec), exec);
            pairs = column_join(probe, sub, exec);
            exec.for_each(pairs.size(),
                          [&](std::size_t k) { pairs.b_ids[k] = sel[pairs.b_ids[k]]; });
        } else {
            pairs = column_join(probe, right.col(step.right_col), exec);
        }

        for (const auto& [left_ref, right_col] : step.residual_eq) {
            const Version& lv = resolve(left_ref.source);
            std::vector<Value> left_vals =
                lv.col(left_ref.col).gather(inter.ids[left_ref.source], exec);
            pairs = filter_pairs_eq(pairs, left_vals, right.col(right_col), exec);
        }

        Intermediate next;
        next.ids.reserve(inter.ids.size() + 1);
        for (const auto& src_ids : inter.ids) next.ids.push_back(permute(src_ids, pairs.a_ids, exec));
        next.ids.push_back(std::move(pairs.b_ids));
        inter = std::move(next);
        if (inter.rows() == 0) return empty_block;
    }

    // Head projection, widened with guard-only columns when needed.
    std::vector<std::vector<Value>> out_cols;
    out_cols.reserve(plan.output_cols.size());
    for (const ColRef& ref : plan.output_cols)
        out_cols.push_back(resolve(ref.source).col(ref.col).gather(inter.ids[ref.source], exec));

    if (plan.guard_neq.empty()) return out_cols;

    Version wide = Version::from_columns(std::move(out_cols), exec);
    std::vector<TupleId> keep;
    for (std::size_t g = 0; g < plan.guard_neq.size(); ++g) {
        auto pass = filter_neq(wide, plan.guard_neq[g].first, plan.guard_neq[g].second, exec);
        if (g == 0) {
            keep = std::move(pass);
        } else {
            std::vector<TupleId> merged;
            std::set_intersection(keep.begin(), keep.end(), pass.begin(), pass.end(),
                                  std::back_inserter(merged));
            keep = std::move(merged);
        }
    }

    std::vector<std::vector<Value>> head_cols(plan.head_arity);
    for (std::size_t j = 0; j < plan.head_arity; ++j) head_cols[j] = wide.col(j).gather(keep, exec);
    return head_cols;
}

EvaluationState seed(const Program& program, const FactMap& facts, const Executor& exec) {
    EvaluationState state;
    for (const RelationDecl& decl : program.relations) {
        Relation rel(decl.name, decl.arity);
        auto it = facts.find(decl.name);
        if (it != facts.end() && !it->second.empty()) {
            Version raw = Version::decompose(it->second, decl.arity, exec);
            rel.full = dedup_rows(raw, exec);
            rel.delta = rel.full;
        }
        state.relations.emplace(decl.name, std::move(rel));
    }
    return state;
}

bool run_iteration(EvaluationState& state, const std::vector<PlanVariant>& variants,
                   std::size_t iteration, const Executor& exec) {
    const auto t0 = std::chrono::steady_clock::now();

    // Evaluate every active variant, pooling the head blocks per relation.
    // Every head relation gets an entry (and hence a merge that rotates its
    // DELTA out) even when none of its variants ran this iteration.
    std::map<std::string, std::vector<std::vector<Value>>> pooled;
    std::map<std::string, std::size_t> merges;
    for (const PlanVariant& variant : variants) {
        pooled.try_emplace(variant.plan->head_relation,
                           std::vector<std::vector<Value>>(variant.plan->head_arity));
        merges.try_emplace(variant.plan->head_relation, 0);
    }
    for (const PlanVariant& variant : variants) {
        if (variant.edb_only() && iteration != 0) continue;
        const RulePlan& plan = *variant.plan;
        auto resolve = [&](std::size_t s) -> const Version& {
            const Relation& rel = state.relations.at(plan.sources[s].relation);
            return s == variant.delta_source ? rel.delta : rel.full;
        };
        auto block = execute_plan(plan, resolve, exec);

        auto& acc = pooled.at(plan.head_relation);
        for (std::size_t j = 0; j < plan.head_arity; ++j)
            acc[j].insert(acc[j].end(), block[j].begin(), block[j].end());
    }

    // Per head relation: NEW -> internal dedup -> dedup against FULL ->
    // difference -> single merge.
    bool any_delta = false;
    IterationStats iter_stats;
    iter_stats.index = iteration;
    for (auto& [name, block] : pooled) {
        Relation& rel = state.relations.at(name);
        rel.new_rows = Version::from_columns(std::move(block), exec);

        Version delta;
        if (rel.new_rows.rows() > 0) {
            Version distinct = dedup_rows(rel.new_rows, exec);
            DupBitmap flags = deduplicate(distinct, rel.full, exec);
            delta = difference(distinct, flags, exec);
        } else {
            delta = Version(rel.arity);
        }

        rel.merge_delta(std::move(delta), exec);
        merges[name] += 1;

        if (rel.delta.rows() > 0) any_delta = true;
        iter_stats.relations.push_back({name, rel.delta.rows(), rel.full.rows(), merges[name]});
    }

    const auto t1 = std::chrono::steady_clock::now();
    iter_stats.elapsed_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    state.stats.push_back(std::move(iter_stats));
    return any_delta;
}

EvaluationState evaluate(const Program& program, const FactMap& facts, const Executor& exec) {
    auto diags = validate_program(program);
    if (!diags.empty()) throw DiagnosticError(diags.front());

    std::vector<RulePlan> plans = compile_program(program);
    const std::set<std::string> idb = idb_relations(program);
    std::vector<PlanVariant> variants;
    for (const RulePlan& plan : plans) {
        auto vs = delta_rewrite(plan, idb);
        variants.insert(variants.end(), vs.begin(), vs.end());
    }

    EvaluationState state = seed(program, facts, exec);
    std::size_t iteration = 0;
    while (run_iteration(state, variants, iteration, exec)) ++iteration;
    state.iterations = iteration + 1;
    return state;
}

} // namespace colog
