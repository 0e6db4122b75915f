#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace colog {

/// Batch run configuration, mirroring the CLI surface.
struct RunConfig {
    std::filesystem::path program_path;
    std::filesystem::path facts_dir;
    std::filesystem::path out_dir;
    unsigned workers = 0; // 0 = hardware concurrency
    bool print_stats = false;
    std::vector<std::string> dump_relations;
};

/// Parse, validate, load facts, evaluate to fixpoint, dump the requested
/// relations, and print a summary. Returns 0 on success; on failure prints
/// a diagnostic to `err` and returns nonzero.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

} // namespace colog
