#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "colog/column.hpp"
#include "colog/parallel.hpp"
#include "colog/relation.hpp"
#include "colog/types.hpp"

namespace colog {

/// Matched surrogate pairs of a join, aligned by position. The join never
/// materializes data columns; rows are gathered later, during projection.
struct IdPairSet {
    std::vector<TupleId> a_ids;
    std::vector<TupleId> b_ids;

    std::size_t size() const { return a_ids.size(); }
    bool operator==(const IdPairSet&) const = default;
};

/// Probe-phase output: per surviving probe tuple, its build-side range and
/// its own id. Empty ranges have already been filtered out.
struct MatchVector {
    std::vector<MatchRange> ranges;
    std::vector<TupleId> matched;

    std::size_t size() const { return ranges.size(); }
};

/// Duplicate flags aligned with a NEW version's tuple ids.
struct DupBitmap {
    std::vector<std::uint8_t> flags; // 1 = row already present in FULL

    std::size_t size() const { return flags.size(); }
    bool test(std::size_t i) const { return flags[i] != 0; }
};

/// Ascending ids whose value in the column equals v.
std::vector<TupleId> select_eq(const Column& col, Value v);

/// Materialize selected rows of selected columns as a fresh version:
/// output row k = (ver.col(col_map[0]).raw[ids[k]], ...). col_map may
/// duplicate and reorder source columns; indexes are rebuilt.
Version project(const Version& ver, std::span<const TupleId> ids,
                std::span<const std::size_t> col_map, const Executor& exec);

// --- Two-phase hash join -------------------------------------------------
//
// Phase 1 probes the build side's unique index once per probe value, filters
// out misses, and reduces the surviving range counts into the total output
// size. Phase 2 exclusive-scans the counts into an offset buffer, allocates
// the output once, and lets each output position locate its source range by
// binary search, so every writer emits the same number of tuples regardless
// of skew.

/// Phase 1 over an arbitrary probe value array (a column's raw data, or a
/// lazily gathered intermediate). matched[i] holds the probe position.
MatchVector join_probe_phase(std::span<const Value> probe_values, const Column& build,
                             const Executor& exec);

/// Total join size: sum of the surviving range counts.
std::uint64_t join_total_size(const MatchVector& mv, const Executor& exec);

/// Exclusive prefix scan of the range counts; offsets[j] is the first output
/// position of range j. One past the last range is the total size.
std::vector<std::uint64_t> join_offsets(const MatchVector& mv);

/// Phase 2: write (probe id, build id) pairs into a single pre-sized output.
IdPairSet join_write_phase(const MatchVector& mv, std::span<const std::uint64_t> offsets,
                           std::uint64_t total_size, const Column& build,
                           const Executor& exec);

/// The full join: exactly {(a, b) : probe.raw[a] == build.raw[b]}, in a
/// deterministic order.
IdPairSet column_join(const Column& probe, const Column& build, const Executor& exec);
IdPairSet column_join(std::span<const Value> probe_values, const Column& build,
                      const Executor& exec);

// --------------------------------------------------------------------------

/// Residual equality for rules that join on more than one variable: keeps
/// pair k iff col_a.raw[a_ids[k]] == col_b.raw[b_ids[k]], order preserved.
IdPairSet filter_pairs_eq(const IdPairSet& pairs, const Column& col_a, const Column& col_b,
                          const Executor& exec);
/// Same check against an arbitrary value array on the left side, aligned
/// with a_ids by position index.
IdPairSet filter_pairs_eq(const IdPairSet& pairs, std::span<const Value> left_values,
                          const Column& col_b, const Executor& exec);

/// Ids whose rows differ on columns i and j (x != y guards).
std::vector<TupleId> filter_neq(const Version& ver, std::size_t col_i, std::size_t col_j,
                                const Executor& exec);

/// Triangle-join deduplication: flags[i] is true iff NEW row i already
/// exists in FULL. Each column is probed in its own parallel loop; rows with
/// any missing range are dropped early; a final parallel loop checks whether
/// the per-column id runs share a common id (runs are ascending by id, so a
/// short-circuiting merge intersection suffices).
DupBitmap deduplicate(const Version& new_ver, const Version& full, const Executor& exec);

/// Rows of new_ver whose flag is false, first-occurrence order, dense ids.
Version difference(const Version& new_ver, const DupBitmap& flags, const Executor& exec);

/// Set union of disjoint versions: plain concatenation.
Version union_concat(const Version& full, const Version& delta, const Executor& exec);

} // namespace colog
