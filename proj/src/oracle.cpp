#include "colog/oracle.hpp"

#include <stdexcept>
#include <unordered_map>

namespace colog::oracle {

namespace {

using Env = std::unordered_map<std::string, Value>;

Value term_value(const Term& t) {
    if (t.kind == Term::Kind::StrConst)
        throw std::invalid_argument("oracle: unresolved string constant");
    return t.number;
}

// Match atom args against a row, extending env; returns false on conflict.
bool match_atom(const Atom& atom, const Row& row, Env& env,
                std::vector<std::string>& bound_here) {
    for (std::size_t i = 0; i < atom.args.size(); ++i) {
        const Term& t = atom.args[i];
        if (t.is_constant()) {
            if (row[i] != term_value(t)) return false;
            continue;
        }
        auto it = env.find(t.text);
        if (it != env.end()) {
            if (it->second != row[i]) return false;
        } else {
            env.emplace(t.text, row[i]);
            bound_here.push_back(t.text);
        }
    }
    return true;
}

void search(const Rule& rule, const RowSet& rows, std::size_t depth, Env& env,
            std::set<Row>& out) {
    if (depth == rule.body.size()) {
        for (const Guard& g : rule.guards)
            if (env.at(g.lhs) == env.at(g.rhs)) return;
        Row head(rule.head.args.size());
        for (std::size_t i = 0; i < head.size(); ++i) {
            const Term& t = rule.head.args[i];
            head[i] = t.is_constant() ? term_value(t) : env.at(t.text);
        }
        out.insert(std::move(head));
        return;
    }
    const Atom& atom = rule.body[depth];
    auto it = rows.find(atom.relation);
    if (it == rows.end()) return;
    for (const Row& row : it->second) {
        if (row.size() != atom.args.size()) continue;
        std::vector<std::string> bound_here;
        if (match_atom(atom, row, env, bound_here))
            search(rule, rows, depth + 1, env, out);
        for (const auto& v : bound_here) env.erase(v);
    }
}

} // namespace

std::set<Row> single_step(const Rule& rule, const RowSet& rows) {
    std::set<Row> out;
    Env env;
    search(rule, rows, 0, env, out);
    return out;
}

RowSet naive_evaluate(const Program& program, const FactMap& edb) {
    RowSet rows;
    for (const RelationDecl& decl : program.relations) rows[decl.name];
    for (const auto& [name, tuples] : edb)
        rows[name].insert(tuples.begin(), tuples.end());

    bool changed = true;
    while (changed) {
        changed = false;
        for (const Rule& rule : program.rules) {
            std::set<Row> derived = single_step(rule, rows);
            auto& target = rows[rule.head.relation];
            for (Row r : derived)
                if (target.insert(std::move(r)).second) changed = true;
        }
    }
    return rows;
}

} // namespace colog::oracle
