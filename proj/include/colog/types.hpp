#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace colog {

/// Dictionary-encoded constant. All relation data is stored as 32-bit values.
using Value = std::uint32_t;

/// Dense per-version tuple offset. The surrogate id of a row is its array
/// position, so ids of a version are always exactly 0..rows-1.
using TupleId = std::uint32_t;

/// A slice of a column's sorted indices: all positions holding one value.
struct MatchRange {
    std::uint32_t start = 0;
    std::uint32_t count = 0;

    bool operator==(const MatchRange&) const = default;
};

/// A materialized row, used at module boundaries and in the oracle.
/// Hot paths stay column-wise and never touch this type.
using Row = std::vector<Value>;

} // namespace colog
