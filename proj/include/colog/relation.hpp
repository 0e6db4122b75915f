#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "colog/column.hpp"
#include "colog/parallel.hpp"
#include "colog/types.hpp"

namespace colog {

/// One version (full, delta or new) of a decomposed n-ary relation:
/// n columns of equal length, row i being (cols[0].raw[i], ..., cols[n-1].raw[i]).
/// The surrogate id of a row is its position, shared by all columns.
class Version {
public:
    Version() = default;
    explicit Version(std::size_t arity) : cols_(arity) {}

    /// Split rows column-wise and build every column's indexes.
    /// Duplicates are allowed here; deduplication is a separate step.
    static Version decompose(std::span<const Row> rows, std::size_t arity,
                             const Executor& exec);

    /// Adopt pre-split columns (all the same length) and build indexes.
    static Version from_columns(std::vector<std::vector<Value>> cols, const Executor& exec);

    std::size_t arity() const { return cols_.size(); }
    std::size_t rows() const { return cols_.empty() ? 0 : cols_[0].size(); }
    bool empty() const { return rows() == 0; }

    const Column& col(std::size_t j) const { return cols_[j]; }

    Row row(TupleId id) const;

    /// All rows in id order; reconstruct(decompose(rows)) == rows.
    std::vector<Row> reconstruct() const;

    /// Concatenate another version's rows after this one's (new rows take
    /// the next dense ids) and rebuild indexes.
    Version append(const Version& extra, const Executor& exec) const;

private:
    std::vector<Column> cols_;
};

/// One representative per distinct row: the occurrence with the smallest
/// original id survives, output ordered by first occurrence, ids re-densified.
Version dedup_rows(const Version& ver, const Executor& exec);

/// True iff two rows of the version are equal. Test/invariant helper.
bool has_duplicate_rows(const Version& ver, const Executor& exec);

/// A named relation with the three semi-naive evaluation versions.
/// At iteration boundaries: full holds everything derived so far, delta
/// holds exactly the rows merged at the end of the previous iteration,
/// and new_rows is empty.
struct Relation {
    std::string name;
    std::size_t arity = 0;
    Version full;
    Version delta;
    Version new_rows;

    Relation() = default;
    Relation(std::string n, std::size_t a)
        : name(std::move(n)), arity(a), full(a), delta(a), new_rows(a) {}

    /// End-of-iteration merge: full <- full ++ deduped_delta, delta <- the
    /// given rows, new_rows cleared. Precondition: deduped_delta has no
    /// duplicates internally or against full.
    void merge_delta(Version deduped_delta, const Executor& exec);
};

} // namespace colog
