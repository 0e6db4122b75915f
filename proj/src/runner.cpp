#include "colog/runner.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "colog/engine.hpp"
#include "colog/io.hpp"
#include "colog/parser.hpp"

namespace colog {

namespace {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open program file: " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

} // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        const std::string text = read_file(config.program_path);

        Program program;
        try {
            program = parse_program(text);
        } catch (const DiagnosticError& e) {
            err << config.program_path.string() << ":" << e.what() << "\n";
            return 1;
        }

        auto diags = validate_program(program);
        if (!diags.empty()) {
            for (const auto& d : diags)
                err << config.program_path.string() << ":" << format_diagnostic(d) << "\n";
            return 1;
        }

        Dictionary dict;
        resolve_strings(program, dict);
        FactMap facts = program_facts(program);

        for (const RelationDecl& decl : program.relations) {
            const auto path = config.facts_dir / (decl.name + ".tsv");
            if (!std::filesystem::exists(path)) continue;
            LoadResult loaded = load_facts(path, decl.arity, dict);
            auto& rows = facts[decl.name];
            rows.insert(rows.end(), loaded.rows.begin(), loaded.rows.end());
        }

        Executor exec(config.workers);
        const auto t0 = std::chrono::steady_clock::now();
        EvaluationState state = evaluate(program, facts, exec);
        const auto t1 = std::chrono::steady_clock::now();
        const double total_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

        if (config.print_stats) {
            for (const IterationStats& it : state.stats)
                for (const RelationStats& rs : it.relations)
                    out << "iter=" << it.index << " rel=" << rs.relation
                        << " delta=" << rs.delta_rows << " ms=" << it.elapsed_ms << "\n";
        }

        for (const auto& [name, rel] : state.relations)
            out << "rel=" << name << " rows=" << rel.full.rows() << "\n";
        out << "iterations=" << state.iterations << " total_ms=" << total_ms
            << " workers=" << exec.workers() << "\n";

        if (!config.dump_relations.empty()) {
            std::filesystem::create_directories(config.out_dir);
            for (const std::string& name : config.dump_relations) {
                auto it = state.relations.find(name);
                if (it == state.relations.end()) {
                    err << "unknown relation in --dump: " << name << "\n";
                    return 1;
                }
                dump_relation(it->second.full, dict.empty() ? nullptr : &dict,
                              config.out_dir / (name + ".tsv"));
            }
        }
        return 0;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace colog
