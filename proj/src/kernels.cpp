#include "colog/kernels.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <stdexcept>

namespace colog {

namespace {

// Count-then-write compaction of positions accepted by pred, preserving
// order. Per-block counts are combined by a sequential scan, so the result
// is the same for every worker count.
template <typename Pred>
std::vector<std::size_t> compact_positions(std::size_t n, const Executor& exec, Pred pred) {
    const std::size_t blocks = exec.block_count(n);
    std::vector<std::size_t> counts(blocks, 0);
    exec.for_blocks(n, [&](std::size_t c, std::size_t begin, std::size_t end) {
        std::size_t k = 0;
        for (std::size_t i = begin; i != end; ++i) k += pred(i) ? 1 : 0;
        counts[c] = k;
    });
    std::vector<std::size_t> offsets(blocks + 1, 0);
    std::partial_sum(counts.begin(), counts.end(), offsets.begin() + 1);

    std::vector<std::size_t> out(offsets[blocks]);
    exec.for_blocks(n, [&](std::size_t c, std::size_t begin, std::size_t end) {
        std::size_t w = offsets[c];
        for (std::size_t i = begin; i != end; ++i)
            if (pred(i)) out[w++] = i;
    });
    return out;
}

} // namespace

std::vector<TupleId> select_eq(const Column& col, Value v) {
    auto range = col.probe(v);
    if (!range) return {};
    // Equal-value runs of sorted_idx are ascending by id already.
    std::vector<TupleId> ids(col.sorted_idx().begin() + range->start,
                             col.sorted_idx().begin() + range->start + range->count);
    assert(std::is_sorted(ids.begin(), ids.end()));
    return ids;
}

Version project(const Version& ver, std::span<const TupleId> ids,
                std::span<const std::size_t> col_map, const Executor& exec) {
    std::vector<std::vector<Value>> cols;
    cols.reserve(col_map.size());
    for (std::size_t src : col_map) {
        if (src >= ver.arity()) throw std::out_of_range("project: column index past arity");
        cols.push_back(ver.col(src).gather(ids, exec));
    }
    return Version::from_columns(std::move(cols), exec);
}

MatchVector join_probe_phase(std::span<const Value> probe_values, const Column& build,
                             const Executor& exec) {
    const std::size_t n = probe_values.size();
    std::vector<MatchRange> ranges(n);
    std::vector<std::uint8_t> hit(n, 0);
    exec.for_each(n, [&](std::size_t i) {
        if (auto r = build.probe(probe_values[i])) {
            ranges[i] = *r;
            hit[i] = 1;
        }
    });

    auto kept = compact_positions(n, exec, [&](std::size_t i) { return hit[i] != 0; });

    MatchVector mv;
    mv.ranges.resize(kept.size());
    mv.matched.resize(kept.size());
    exec.for_each(kept.size(), [&](std::size_t k) {
        mv.ranges[k] = ranges[kept[k]];
        mv.matched[k] = static_cast<TupleId>(kept[k]);
    });
    return mv;
}

std::uint64_t join_total_size(const MatchVector& mv, const Executor& exec) {
    const std::size_t blocks = exec.block_count(mv.size());
    std::vector<std::uint64_t> partial(blocks, 0);
    exec.for_blocks(mv.size(), [&](std::size_t c, std::size_t begin, std::size_t end) {
        std::uint64_t s = 0;
        for (std::size_t i = begin; i != end; ++i) s += mv.ranges[i].count;
        partial[c] = s;
    });
    return std::accumulate(partial.begin(), partial.end(), std::uint64_t{0});
}

std::vector<std::uint64_t> join_offsets(const MatchVector& mv) {
    std::vector<std::uint64_t> offsets(mv.size());
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < mv.size(); ++i) {
        offsets[i] = acc;
        acc += mv.ranges[i].count;
    }
    return offsets;
}

IdPairSet join_write_phase(const MatchVector& mv, std::span<const std::uint64_t> offsets,
                           std::uint64_t total_size, const Column& build,
                           const Executor& exec) {
    IdPairSet out;
    out.a_ids.resize(total_size);
    out.b_ids.resize(total_size);
    const auto& sorted = build.sorted_idx();
    exec.for_each(total_size, [&](std::size_t n) {
        // Find j with offsets[j] <= n < offsets[j+1]; the virtual terminal
        // entry past the last range is total_size.
        const std::size_t j =
            static_cast<std::size_t>(std::upper_bound(offsets.begin(), offsets.end(), n) -
                                     offsets.begin()) -
            1;
        const std::uint64_t rank = n - offsets[j];
        out.a_ids[n] = mv.matched[j];
        out.b_ids[n] = sorted[mv.ranges[j].start + rank];
    });
    return out;
}

IdPairSet column_join(std::span<const Value> probe_values, const Column& build,
                      const Executor& exec) {
    MatchVector mv = join_probe_phase(probe_values, build, exec);
    const std::uint64_t total = join_total_size(mv, exec);
    auto offsets = join_offsets(mv);
    return join_write_phase(mv, offsets, total, build, exec);
}

IdPairSet column_join(const Column& probe, const Column& build, const Executor& exec) {
    return column_join(std::span<const Value>(probe.raw()), build, exec);
}

IdPairSet filter_pairs_eq(const IdPairSet& pairs, const Column& col_a, const Column& col_b,
                          const Executor& exec) {
    auto kept = compact_positions(pairs.size(), exec, [&](std::size_t k) {
        return col_a.value_at(pairs.a_ids[k]) == col_b.value_at(pairs.b_ids[k]);
    });
    IdPairSet out;
    out.a_ids.resize(kept.size());
    out.b_ids.resize(kept.size());
    exec.for_each(kept.size(), [&](std::size_t k) {
        out.a_ids[k] = pairs.a_ids[kept[k]];
        out.b_ids[k] = pairs.b_ids[kept[k]];
    });
    return out;
}

IdPairSet filter_pairs_eq(const IdPairSet& pairs, std::span<const Value> left_values,
                          const Column& col_b, const Executor& exec) {
    auto kept = compact_positions(pairs.size(), exec, [&](std::size_t k) {
        return left_values[k] == col_b.value_at(pairs.b_ids[k]);
    });
    IdPairSet out;
    out.a_ids.resize(kept.size());
    out.b_ids.resize(kept.size());
    exec.for_each(kept.size(), [&](std::size_t k) {
        out.a_ids[k] = pairs.a_ids[kept[k]];
        out.b_ids[k] = pairs.b_ids[kept[k]];
    });
    return out;
}

std::vector<TupleId> filter_neq(const Version& ver, std::size_t col_i, std::size_t col_j,
                                const Executor& exec) {
    if (col_i >= ver.arity() || col_j >= ver.arity())
        throw std::out_of_range("filter_neq: column index past arity");
    const auto& a = ver.col(col_i).raw();
    const auto& b = ver.col(col_j).raw();
    auto kept = compact_positions(ver.rows(), exec,
                                  [&](std::size_t i) { return a[i] != b[i]; });
    std::vector<TupleId> ids(kept.size());
    exec.for_each(kept.size(), [&](std::size_t k) { ids[k] = static_cast<TupleId>(kept[k]); });
    return ids;
}

namespace {

// True iff the n id runs share a common element. Runs are ascending, so we
// advance the lagging cursors toward the current maximum and stop at the
// first id present in all runs.
bool runs_intersect(std::span<const std::span<const TupleId>> runs) {
    const std::size_t n = runs.size();
    if (n == 1) return !runs[0].empty();
    std::vector<std::size_t> pos(n, 0);
    while (true) {
        TupleId max_id = 0;
        bool all_equal = true;
        for (std::size_t j = 0; j < n; ++j) {
            if (pos[j] >= runs[j].size()) return false;
            const TupleId v = runs[j][pos[j]];
            if (j == 0) {
                max_id = v;
            } else if (v != max_id) {
                all_equal = false;
                if (v > max_id) max_id = v;
            }
        }
        if (all_equal) return true;
        for (std::size_t j = 0; j < n; ++j)
            while (pos[j] < runs[j].size() && runs[j][pos[j]] < max_id) ++pos[j];
    }
}

} // namespace

DupBitmap deduplicate(const Version& new_ver, const Version& full, const Executor& exec) {
    if (new_ver.arity() != full.arity())
        throw std::invalid_argument("deduplicate: arity mismatch");
    const std::size_t arity = new_ver.arity();
    const std::size_t n = new_ver.rows();

    DupBitmap bitmap;
    bitmap.flags.assign(n, 0);
    if (n == 0 || full.rows() == 0) return bitmap;

    // One probe loop per column, kept separate as in the join kernels.
    std::vector<std::vector<MatchRange>> ranges(arity);
    std::vector<std::vector<std::uint8_t>> hit(arity);
    for (std::size_t j = 0; j < arity; ++j) {
        ranges[j].resize(n);
        hit[j].assign(n, 0);
        const auto& probe_raw = new_ver.col(j).raw();
        const Column& build = full.col(j);
        exec.for_each(n, [&](std::size_t i) {
            if (auto r = build.probe(probe_raw[i])) {
                ranges[j][i] = *r;
                hit[j][i] = 1;
            }
        });
    }

    // Early drop: a row missing in any column cannot be a duplicate.
    auto candidates = compact_positions(n, exec, [&](std::size_t i) {
        for (std::size_t j = 0; j < arity; ++j)
            if (!hit[j][i]) return false;
        return true;
    });

    // Marking loop: a row is a duplicate iff its per-column id runs overlap.
    exec.for_each(candidates.size(), [&](std::size_t k) {
        const std::size_t i = candidates[k];
        std::vector<std::span<const TupleId>> runs(arity);
        for (std::size_t j = 0; j < arity; ++j) {
            const MatchRange r = ranges[j][i];
            runs[j] = std::span<const TupleId>(full.col(j).sorted_idx())
                          .subspan(r.start, r.count);
        }
        if (runs_intersect(runs)) bitmap.flags[i] = 1;
    });
    return bitmap;
}

Version difference(const Version& new_ver, const DupBitmap& flags, const Executor& exec) {
    if (flags.size() != new_ver.rows())
        throw std::invalid_argument("difference: bitmap not aligned with version");
    auto kept = compact_positions(new_ver.rows(), exec,
                                  [&](std::size_t i) { return flags.flags[i] == 0; });
    std::vector<TupleId> ids(kept.size());
    exec.for_each(kept.size(), [&](std::size_t k) { ids[k] = static_cast<TupleId>(kept[k]); });

    std::vector<std::vector<Value>> cols(new_ver.arity());
    for (std::size_t j = 0; j < new_ver.arity(); ++j) cols[j] = new_ver.col(j).gather(ids, exec);
    return Version::from_columns(std::move(cols), exec);
}

Version union_concat(const Version& full, const Version& delta, const Executor& exec) {
    return full.append(delta, exec);
}

} // namespace colog
