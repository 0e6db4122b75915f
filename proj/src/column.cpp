#include "colog/column.hpp"

#include <atomic>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace colog {

namespace {
std::atomic<std::uint64_t> g_gather_volume{0};
}

std::uint64_t gather_volume() { return g_gather_volume.load(std::memory_order_relaxed); }
void reset_gather_volume() { g_gather_volume.store(0, std::memory_order_relaxed); }

std::pair<std::vector<TupleId>, UniqueIndex> build_index(std::span<const Value> raw,
                                                         const Executor& exec) {
    if (raw.size() > std::numeric_limits<TupleId>::max())
        throw std::length_error("column exceeds 32-bit tuple id space");

    std::vector<TupleId> sorted_idx(raw.size());
    std::iota(sorted_idx.begin(), sorted_idx.end(), TupleId{0});

    // (value, id) is a strict total order: the sorted permutation is unique,
    // which makes the build deterministic under any parallel schedule and
    // keeps equal-value runs ascending by id.
    exec.sort(sorted_idx.begin(), sorted_idx.end(), [&raw](TupleId a, TupleId b) {
        return raw[a] != raw[b] ? raw[a] < raw[b] : a < b;
    });

    UniqueIndex unique_idx;
    std::size_t i = 0;
    while (i < sorted_idx.size()) {
        const Value v = raw[sorted_idx[i]];
        std::size_t j = i + 1;
        while (j < sorted_idx.size() && raw[sorted_idx[j]] == v) ++j;
        unique_idx.emplace(v, MatchRange{static_cast<std::uint32_t>(i),
                                         static_cast<std::uint32_t>(j - i)});
        i = j;
    }
    return {std::move(sorted_idx), std::move(unique_idx)};
}

Column Column::build(std::vector<Value> raw, const Executor& exec) {
    Column col;
    col.raw_ = std::move(raw);
    auto [sorted, unique] = build_index(col.raw_, exec);
    col.sorted_idx_ = std::move(sorted);
    col.unique_idx_ = std::move(unique);
    return col;
}

std::vector<Value> Column::gather(std::span<const TupleId> ids, const Executor& exec) const {
    const std::size_t n = raw_.size();
    for (TupleId id : ids)
        if (id >= n) throw std::out_of_range("gather: tuple id past end of column");

    std::vector<Value> out(ids.size());
    exec.for_each(ids.size(), [&](std::size_t i) { out[i] = raw_[ids[i]]; });
    g_gather_volume.fetch_add(ids.size(), std::memory_order_relaxed);
    return out;
}

Column Column::append_and_reindex(std::span<const Value> new_values,
                                  const Executor& exec) const {
    std::vector<Value> merged;
    merged.reserve(raw_.size() + new_values.size());
    merged.insert(merged.end(), raw_.begin(), raw_.end());
    merged.insert(merged.end(), new_values.begin(), new_values.end());
    return build(std::move(merged), exec);
}

} // namespace colog
