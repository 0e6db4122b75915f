#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <absl/container/flat_hash_map.h>

#include "colog/parallel.hpp"
#include "colog/types.hpp"

namespace colog {

/// Map from each distinct value to its (start, count) slice of the sorted
/// indices. Any associative map works here; we use a flat hash map.
using UniqueIndex = absl::flat_hash_map<Value, MatchRange>;

/// One decomposed attribute of a relation, stored in three layers:
///   raw        - values in logical insertion order (uncompressed)
///   sorted_idx - permutation of 0..size-1 ordered by (value, id)
///   unique_idx - distinct value -> run of positions in sorted_idx
///
/// Columns are immutable after construction; builds and appends return new
/// index structures, so any number of concurrent readers is safe.
class Column {
public:
    Column() = default;

    /// Build all three layers over the given raw array. Total function:
    /// empty input and duplicate values are fine. Deterministic for every
    /// worker count because equal values are ordered by ascending id.
    static Column build(std::vector<Value> raw, const Executor& exec);

    std::size_t size() const { return raw_.size(); }
    bool empty() const { return raw_.empty(); }

    const std::vector<Value>& raw() const { return raw_; }
    const std::vector<TupleId>& sorted_idx() const { return sorted_idx_; }
    const UniqueIndex& unique_idx() const { return unique_idx_; }

    Value value_at(TupleId id) const { return raw_[id]; }

    /// Range of sorted_idx positions whose raw value equals v, or nullopt
    /// when v does not occur. Defined (always nullopt) on empty columns.
    std::optional<MatchRange> probe(Value v) const {
        auto it = unique_idx_.find(v);
        if (it == unique_idx_.end()) return std::nullopt;
        return it->second;
    }

    /// out[i] = raw[ids[i]]. Rejects any out-of-bounds id before the
    /// parallel copy phase starts.
    std::vector<Value> gather(std::span<const TupleId> ids, const Executor& exec) const;

    /// New column whose raw array is raw ++ new_values. Existing ids are
    /// stable; appended tuples take the next dense ids; indexes rebuilt.
    Column append_and_reindex(std::span<const Value> new_values, const Executor& exec) const;

private:
    std::vector<Value> raw_;
    std::vector<TupleId> sorted_idx_;
    UniqueIndex unique_idx_;
};

/// Index layers for a raw array, as a standalone step: a (value, id)-ordered
/// permutation plus the distinct-value range map over it.
std::pair<std::vector<TupleId>, UniqueIndex> build_index(std::span<const Value> raw,
                                                         const Executor& exec);

/// Total number of values materialized by gather() so far, process-wide.
/// Lets tests account for lazy materialization: joins must not touch
/// non-join columns, so the counter may only move during projection.
std::uint64_t gather_volume();
void reset_gather_volume();

} // namespace colog
