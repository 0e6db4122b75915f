#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "colog/ast.hpp"
#include "colog/dictionary.hpp"
#include "colog/relation.hpp"
#include "colog/types.hpp"

namespace colog {

/// Rows loaded from one facts file plus how its fields were encoded.
struct LoadResult {
    std::vector<Row> rows;
    bool dict_encoded = false;
};

/// Load a tab-separated facts file with `arity` fields per line.
///
/// If every field of the first line parses as an unsigned 32-bit integer the
/// whole file is read as raw values; otherwise every field (of every line)
/// is dictionary-encoded. Errors carry the offending line number. An empty
/// file yields an empty relation.
LoadResult load_facts(const std::filesystem::path& path, std::size_t arity, Dictionary& dict);

/// Write a version's rows as sorted TSV. With a dictionary, values are
/// decoded and rows ordered by their string tuples; otherwise rows are
/// ordered numerically. Decoding a value outside the dictionary throws.
void dump_relation(const Version& ver, const Dictionary* dict,
                   const std::filesystem::path& path);

/// Same, into a stream (used for diff-stable in-memory comparisons).
void dump_relation(const Version& ver, const Dictionary* dict, std::ostream& os);

/// Replace every string constant in facts and rules with its dictionary
/// value.
void resolve_strings(Program& program, Dictionary& dict);

/// Facts written in the program text, grouped per relation.
FactMap program_facts(const Program& program);

} // namespace colog
