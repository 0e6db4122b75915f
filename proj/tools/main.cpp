#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "colog/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"colog - column-oriented Datalog engine"};
    app.require_subcommand(1);

    colog::RunConfig config;
    std::string dump_list;

    CLI::App* run_cmd = app.add_subcommand("run", "evaluate a Datalog program to fixpoint");
    run_cmd->add_option("program", config.program_path, "Datalog program file")
        ->required()
        ->check(CLI::ExistingFile);
    run_cmd->add_option("--facts", config.facts_dir, "directory with <relation>.tsv fact files")
        ->required();
    run_cmd->add_option("--out", config.out_dir, "output directory for dumped relations")
        ->required();
    run_cmd->add_option("--workers", config.workers,
                        "worker threads for intra-operator parallelism (default: all cores)");
    run_cmd->add_flag("--stats", config.print_stats, "print one line per iteration and relation");
    run_cmd->add_option("--dump", dump_list, "comma-separated relations to write as TSV");

    CLI11_PARSE(app, argc, argv);

    if (!dump_list.empty()) {
        std::size_t start = 0;
        while (start <= dump_list.size()) {
            std::size_t comma = dump_list.find(',', start);
            if (comma == std::string::npos) comma = dump_list.size();
            if (comma > start)
                config.dump_relations.push_back(dump_list.substr(start, comma - start));
            start = comma + 1;
        }
    }

    return colog::run(config, std::cout, std::cerr);
}
