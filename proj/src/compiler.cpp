#include "colog/compiler.hpp"

#include <optional>
#include <unordered_map>

namespace colog {

namespace {

Value constant_value(const Term& t) {
    if (t.kind == Term::Kind::StrConst)
        throw DiagnosticError(
            {t.pos, "string constant has not been resolved through the dictionary"});
    return t.number;
}

} // namespace

RulePlan compile_rule(const Rule& rule, const Program& program) {
    RulePlan plan;
    plan.head_relation = rule.head.relation;
    plan.head_arity = rule.head.arity();

    // First global binding of each variable.
    std::unordered_map<std::string, ColRef> binding;

    for (std::size_t s = 0; s < rule.body.size(); ++s) {
        const Atom& atom = rule.body[s];
        const RelationDecl* decl = program.find_relation(atom.relation);

        RulePlan::Source src;
        src.relation = atom.relation;
        src.arity = decl ? decl->arity : atom.arity();

        std::unordered_map<std::string, std::size_t> local; // var -> first col in this atom
        std::optional<std::size_t> join_col;
        ColRef join_left;
        std::vector<std::pair<ColRef, std::size_t>> residuals;

        for (std::size_t c = 0; c < atom.args.size(); ++c) {
            const Term& t = atom.args[c];
            if (t.is_constant()) {
                src.const_selects.emplace_back(c, constant_value(t));
                continue;
            }
            auto [it, fresh] = local.emplace(t.text, c);
            if (!fresh) {
                src.self_eqs.emplace_back(it->second, c);
                continue;
            }
            auto bound = binding.find(t.text);
            if (bound != binding.end() && s > 0) {
                if (!join_col) {
                    join_col = c;
                    join_left = bound->second;
                } else {
                    residuals.emplace_back(bound->second, c);
                }
            }
            if (bound == binding.end()) binding.emplace(t.text, ColRef{s, c});
        }

        plan.sources.push_back(std::move(src));
        if (s > 0) {
            if (!join_col)
                throw DiagnosticError(
                    {atom.pos, "atom '" + atom.relation +
                                   "' shares no variable with the preceding body atoms "
                                   "(cross products are not supported)"});
            plan.joins.push_back({s, join_left, *join_col, std::move(residuals)});
        }
    }

    for (const Term& t : rule.head.args) {
        auto bound = binding.find(t.text);
        if (t.is_constant() || bound == binding.end())
            throw DiagnosticError({t.pos, "rule head must project bound variables"});
        plan.output_cols.push_back(bound->second);
    }

    // Guards run over the projected candidate rows; widen the projection
    // with any guard variable the head does not already carry.
    auto output_slot = [&](const std::string& var, SourcePos pos) {
        auto bound = binding.find(var);
        if (bound == binding.end())
            throw DiagnosticError({pos, "guard variable '" + var + "' is unbound"});
        for (std::size_t i = 0; i < plan.output_cols.size(); ++i)
            if (plan.output_cols[i] == bound->second) return i;
        plan.output_cols.push_back(bound->second);
        return plan.output_cols.size() - 1;
    };
    for (const Guard& g : rule.guards)
        plan.guard_neq.emplace_back(output_slot(g.lhs, g.pos), output_slot(g.rhs, g.pos));

    return plan;
}

std::vector<RulePlan> compile_program(const Program& program) {
    std::vector<RulePlan> plans;
    plans.reserve(program.rules.size());
    for (const Rule& r : program.rules) plans.push_back(compile_rule(r, program));
    return plans;
}

} // namespace colog
