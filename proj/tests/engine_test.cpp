#include <doctest.h>

#include <set>

#include "colog/engine.hpp"
#include "colog/oracle.hpp"
#include "support.hpp"

using namespace colog;

namespace {

const Executor& exec() {
    static Executor e;
    return e;
}

std::vector<Row> block_to_rows(const std::vector<std::vector<Value>>& block) {
    std::vector<Row> rows;
    if (block.empty()) return rows;
    rows.resize(block[0].size(), Row(block.size()));
    for (std::size_t j = 0; j < block.size(); ++j)
        for (std::size_t i = 0; i < block[j].size(); ++i) rows[i][j] = block[j][i];
    return rows;
}

std::set<Row> engine_rows(const EvaluationState& state, const std::string& rel) {
    return testsupport::to_set(state.at(rel).full.reconstruct());
}

/// Random rule in the supported fragment: chain-connected positive body,
/// range-restricted head, occasional constants and guards.
Rule random_rule(std::mt19937& g, const std::vector<RelationDecl>& rels,
                 const std::vector<std::string>& idb_names) {
    auto pick_rel = [&](bool idb_only) -> const RelationDecl& {
        for (;;) {
            const RelationDecl& r = rels[std::uniform_int_distribution<std::size_t>(
                0, rels.size() - 1)(g)];
            if (!idb_only) return r;
            for (const auto& n : idb_names)
                if (n == r.name) return r;
        }
    };
    static const char* var_names[] = {"v0", "v1", "v2", "v3", "v4", "v5"};

    Rule rule;
    std::vector<std::string> bound;
    const std::size_t body_len = std::uniform_int_distribution<std::size_t>(1, 3)(g);
    for (std::size_t b = 0; b < body_len; ++b) {
        const RelationDecl& rel = pick_rel(false);
        Atom atom{rel.name, {}, {}};
        bool shares = b == 0;
        for (std::size_t c = 0; c < rel.arity; ++c) {
            const int roll = std::uniform_int_distribution<int>(0, 9)(g);
            if (roll == 0) {
                atom.args.push_back(
                    Term::integer(std::uniform_int_distribution<Value>(0, 7)(g)));
            } else if (!bound.empty() && (roll < 6 || (!shares && c + 1 == rel.arity))) {
                const auto& v = bound[std::uniform_int_distribution<std::size_t>(
                    0, bound.size() - 1)(g)];
                atom.args.push_back(Term::variable(v));
                shares = true;
            } else {
                const char* v = var_names[std::uniform_int_distribution<std::size_t>(0, 5)(g)];
                atom.args.push_back(Term::variable(v));
                if (b == 0 || std::find(bound.begin(), bound.end(), v) != bound.end())
                    shares = true;
            }
        }
        // Guarantee connectivity: overwrite the first column with a bound
        // variable when the atom ended up disconnected.
        if (!shares) atom.args[0] = Term::variable(bound[0]);
        for (const Term& t : atom.args)
            if (!t.is_constant() &&
                std::find(bound.begin(), bound.end(), t.text) == bound.end())
                bound.push_back(t.text);
        rule.body.push_back(std::move(atom));
    }

    const RelationDecl& head_rel = pick_rel(true);
    Atom head{head_rel.name, {}, {}};
    for (std::size_t c = 0; c < head_rel.arity; ++c)
        head.args.push_back(Term::variable(
            bound[std::uniform_int_distribution<std::size_t>(0, bound.size() - 1)(g)]));
    rule.head = std::move(head);

    if (bound.size() >= 2 && std::uniform_int_distribution<int>(0, 2)(g) == 0) {
        const auto& a = bound[0];
        const auto& b = bound[bound.size() - 1];
        if (a != b) rule.guards.push_back({a, b, {}});
    }
    return rule;
}

Program random_program(std::mt19937& g) {
    Program prog;
    prog.relations = {{"e0", 2, {}},
                      {"e1", std::uniform_int_distribution<std::size_t>(1, 3)(g), {}},
                      {"i0", 2, {}},
                      {"i1", std::uniform_int_distribution<std::size_t>(1, 2)(g), {}}};
    const std::vector<std::string> idb = {"i0", "i1"};
    const std::size_t n_rules = std::uniform_int_distribution<std::size_t>(1, 4)(g);
    for (std::size_t r = 0; r < n_rules; ++r)
        prog.rules.push_back(random_rule(g, prog.relations, idb));
    return prog;
}

FactMap random_edb(std::mt19937& g, const Program& prog, std::size_t max_rows) {
    FactMap edb;
    for (const RelationDecl& rel : prog.relations) {
        if (rel.name[0] != 'e') continue;
        const std::size_t n = std::uniform_int_distribution<std::size_t>(0, max_rows)(g);
        edb[rel.name] = testsupport::random_rows(g, n, rel.arity, 7);
    }
    return edb;
}

} // namespace

TEST_CASE("seed builds full and delta from deduplicated EDB facts") {
    Program prog = testsupport::tc_program();
    FactMap facts;
    facts["edge"] = {{1, 2}, {2, 3}, {3, 4}};
    EvaluationState state = seed(prog, facts, exec());
    CHECK(state.at("edge").full.rows() == 3);
    CHECK(state.at("edge").delta.rows() == 3);
    CHECK(state.at("edge").new_rows.rows() == 0);
    CHECK(state.at("reach").full.rows() == 0); // IDB-only: all versions empty
    CHECK(state.at("reach").delta.rows() == 0);

    FactMap dup;
    dup["edge"] = {{1, 2}, {1, 2}};
    CHECK(seed(prog, dup, exec()).at("edge").full.rows() == 1);
}

TEST_CASE("delta_rewrite emits one variant per IDB body occurrence") {
    Program tc = testsupport::tc_program();
    auto plans = compile_program(tc);
    const auto idb = idb_relations(tc);

    auto copy_variants = delta_rewrite(plans[0], idb);
    REQUIRE(copy_variants.size() == 1);
    CHECK(copy_variants[0].edb_only());

    auto rec_variants = delta_rewrite(plans[1], idb);
    REQUIRE(rec_variants.size() == 1);
    CHECK(rec_variants[0].delta_source == 1); // the reach occurrence

    Program sg = testsupport::sg_program();
    auto sg_plans = compile_program(sg);
    CHECK(delta_rewrite(sg_plans[1], idb_relations(sg)).size() == 1);

    Program two = parse_program("t(x, y) :- e(x, y). t(x, z) :- t(x, y), t(y, z).");
    auto two_plans = compile_program(two);
    CHECK(delta_rewrite(two_plans[1], idb_relations(two)).size() == 2);
}

TEST_CASE("TC trace on a 3-node path matches the hand computation") {
    FactMap facts;
    facts["edge"] = {{1, 2}, {2, 3}};
    EvaluationState state = evaluate(testsupport::tc_program(), facts, exec());

    CHECK(engine_rows(state, "reach") == std::set<Row>{{1, 2}, {2, 3}, {1, 3}});
    REQUIRE(state.iterations == 3);

    auto delta_of = [&](std::size_t iter) {
        for (const auto& rs : state.stats[iter].relations)
            if (rs.relation == "reach") return rs.delta_rows;
        return std::size_t(-1);
    };
    CHECK(delta_of(0) == 2); // the copy rule seeds reach
    CHECK(delta_of(1) == 1); // (1, 3)
    CHECK(delta_of(2) == 0); // fixpoint
}

TEST_CASE("both TC rules contribute through a single merge per iteration") {
    FactMap facts;
    facts["edge"] = testsupport::path_graph(12);
    EvaluationState state = evaluate(testsupport::tc_program(), facts, exec());
    for (const IterationStats& it : state.stats)
        for (const RelationStats& rs : it.relations) CHECK(rs.merges == 1);
}

TEST_CASE("full sizes grow monotonically and stay duplicate-free") {
    FactMap facts;
    facts["edge"] = testsupport::cycle_graph(9);
    EvaluationState state = evaluate(testsupport::tc_program(), facts, exec());
    std::size_t prev = 0;
    for (const IterationStats& it : state.stats)
        for (const RelationStats& rs : it.relations)
            if (rs.relation == "reach") {
                CHECK(rs.full_rows >= prev);
                prev = rs.full_rows;
            }
    CHECK(!has_duplicate_rows(state.at("reach").full, exec()));
}

TEST_CASE("saturated rules derive empty deltas") {
    // reach already equals its closure, so iteration 1 adds nothing.
    Program prog = parse_program("reach(x, y) :- edge(x, y).");
    FactMap facts;
    facts["edge"] = {{1, 2}};
    EvaluationState state = evaluate(prog, facts, exec());
    CHECK(state.iterations == 2);
    CHECK(engine_rows(state, "reach") == std::set<Row>{{1, 2}});
}

TEST_CASE("TC closed forms at unit scale") {
    FactMap path;
    path["edge"] = testsupport::path_graph(30);
    CHECK(evaluate(testsupport::tc_program(), path, exec()).at("reach").full.rows() ==
          30 * 29 / 2);

    FactMap cycle;
    cycle["edge"] = testsupport::cycle_graph(12);
    CHECK(evaluate(testsupport::tc_program(), cycle, exec()).at("reach").full.rows() ==
          12 * 12);
}

TEST_CASE("SG on a balanced binary tree matches the oracle") {
    FactMap facts;
    facts["edge"] = testsupport::binary_tree(3);
    Program prog = testsupport::sg_program();
    EvaluationState state = evaluate(prog, facts, exec());
    auto expected = oracle::naive_evaluate(prog, facts);
    CHECK(engine_rows(state, "sg") == expected.at("sg"));
    CHECK(!engine_rows(state, "sg").empty());
}

TEST_CASE("executing a compiled plan once equals the oracle's single step") {
    auto g = testsupport::rng(55);
    for (int round = 0; round < 40; ++round) {
        Program prog = random_program(g);
        if (!validate_program(prog).empty()) continue;
        FactMap facts = random_edb(g, prog, 60);

        // Give the IDB relations some current rows too.
        oracle::RowSet rows;
        for (const auto& [name, tuples] : facts) rows[name].insert(tuples.begin(), tuples.end());
        for (const RelationDecl& rel : prog.relations)
            if (rel.name[0] == 'i')
                for (const Row& r : testsupport::random_rows(g, 20, rel.arity, 7))
                    rows[rel.name].insert(r);

        std::map<std::string, Version> versions;
        for (const RelationDecl& rel : prog.relations) {
            std::vector<Row> tuples(rows[rel.name].begin(), rows[rel.name].end());
            versions.emplace(rel.name, Version::decompose(tuples, rel.arity, exec()));
        }

        for (const Rule& rule : prog.rules) {
            RulePlan plan = compile_rule(rule, prog);
            auto resolve = [&](std::size_t s) -> const Version& {
                return versions.at(plan.sources[s].relation);
            };
            auto block = execute_plan(plan, resolve, exec());
            CHECK(testsupport::to_set(block_to_rows(block)) == oracle::single_step(rule, rows));
        }
    }
}

TEST_CASE("semi-naive evaluation equals naive evaluation on random programs") {
    auto g = testsupport::rng(56);
    int compared = 0;
    for (int round = 0; round < 25; ++round) {
        Program prog = random_program(g);
        if (!validate_program(prog).empty()) continue;
        FactMap facts = random_edb(g, prog, 40);

        EvaluationState state = evaluate(prog, facts, exec());
        auto expected = oracle::naive_evaluate(prog, facts);
        for (const RelationDecl& rel : prog.relations)
            CHECK(engine_rows(state, rel.name) == expected.at(rel.name));
        ++compared;
    }
    CHECK(compared > 10);
}

TEST_CASE("iteration counts stay within the trivial termination bound") {
    FactMap facts;
    facts["edge"] = testsupport::path_graph(20);
    EvaluationState state = evaluate(testsupport::tc_program(), facts, exec());
    // Active domain of 20 nodes, arity 2: iterations can never exceed 400.
    CHECK(state.iterations <= 400);
}

TEST_CASE("copy and composition rules at engine scale match the oracle") {
    Program prog = parse_program(
        "professor(x) :- fullprofessor(x).\n"
        "faculty(x) :- professor(x).\n"
        "worksfor(x, y) :- headof(x, y).\n"
        "memberof(x, y) :- worksfor(x, y).\n"
        "suborgof(x, z) :- suborgof(x, y), suborgof(y, z).\n"
        "memberof(x, z) :- memberof(x, y), suborgof(y, z).\n");
    auto g = testsupport::rng(57);
    FactMap facts;
    facts["fullprofessor"] = testsupport::random_rows(g, 20, 1, 30);
    facts["headof"] = testsupport::random_rows(g, 30, 2, 30);
    facts["suborgof"] = testsupport::random_rows(g, 50, 2, 15);

    EvaluationState state = evaluate(prog, facts, exec());
    auto expected = oracle::naive_evaluate(prog, facts);
    for (const char* rel : {"professor", "faculty", "worksfor", "memberof", "suborgof"})
        CHECK(engine_rows(state, rel) == expected.at(rel));
}
