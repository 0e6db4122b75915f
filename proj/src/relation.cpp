#include "colog/relation.hpp"

#include <numeric>
#include <stdexcept>

namespace colog {

Version Version::decompose(std::span<const Row> rows, std::size_t arity,
                           const Executor& exec) {
    std::vector<std::vector<Value>> cols(arity);
    for (auto& c : cols) c.reserve(rows.size());
    for (const Row& r : rows) {
        if (r.size() != arity) throw std::invalid_argument("decompose: row arity mismatch");
        for (std::size_t j = 0; j < arity; ++j) cols[j].push_back(r[j]);
    }
    return from_columns(std::move(cols), exec);
}

Version Version::from_columns(std::vector<std::vector<Value>> cols, const Executor& exec) {
    Version ver;
    ver.cols_.reserve(cols.size());
    for (std::size_t j = 1; j < cols.size(); ++j)
        if (cols[j].size() != cols[0].size())
            throw std::invalid_argument("from_columns: column length mismatch");
    for (auto& c : cols) ver.cols_.push_back(Column::build(std::move(c), exec));
    return ver;
}

Row Version::row(TupleId id) const {
    Row r(arity());
    for (std::size_t j = 0; j < arity(); ++j) r[j] = cols_[j].value_at(id);
    return r;
}

std::vector<Row> Version::reconstruct() const {
    std::vector<Row> rows(this->rows());
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = row(static_cast<TupleId>(i));
    return rows;
}

Version Version::append(const Version& extra, const Executor& exec) const {
    if (extra.arity() != arity()) throw std::invalid_argument("append: arity mismatch");
    Version out;
    out.cols_.reserve(arity());
    for (std::size_t j = 0; j < arity(); ++j)
        out.cols_.push_back(cols_[j].append_and_reindex(extra.cols_[j].raw(), exec));
    return out;
}

namespace {

// Strict total order on rows, breaking full ties by id; used to group
// duplicates deterministically.
bool row_id_less(const Version& ver, TupleId a, TupleId b) {
    for (std::size_t j = 0; j < ver.arity(); ++j) {
        const Value va = ver.col(j).value_at(a);
        const Value vb = ver.col(j).value_at(b);
        if (va != vb) return va < vb;
    }
    return a < b;
}

bool rows_equal(const Version& ver, TupleId a, TupleId b) {
    for (std::size_t j = 0; j < ver.arity(); ++j)
        if (ver.col(j).value_at(a) != ver.col(j).value_at(b)) return false;
    return true;
}

} // namespace

Version dedup_rows(const Version& ver, const Executor& exec) {
    const std::size_t n = ver.rows();
    std::vector<TupleId> order(n);
    std::iota(order.begin(), order.end(), TupleId{0});
    exec.sort(order.begin(), order.end(),
              [&](TupleId a, TupleId b) { return row_id_less(ver, a, b); });

    // Group heads carry the smallest id of each distinct row; re-sorting the
    // heads by id restores first-occurrence order.
    std::vector<TupleId> keep;
    keep.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        if (i == 0 || !rows_equal(ver, order[i - 1], order[i])) keep.push_back(order[i]);
    exec.sort(keep.begin(), keep.end(), std::less<TupleId>{});

    std::vector<std::vector<Value>> cols(ver.arity());
    for (std::size_t j = 0; j < ver.arity(); ++j) cols[j] = ver.col(j).gather(keep, exec);
    return Version::from_columns(std::move(cols), exec);
}

bool has_duplicate_rows(const Version& ver, const Executor& exec) {
    const std::size_t n = ver.rows();
    std::vector<TupleId> order(n);
    std::iota(order.begin(), order.end(), TupleId{0});
    exec.sort(order.begin(), order.end(),
              [&](TupleId a, TupleId b) { return row_id_less(ver, a, b); });
    for (std::size_t i = 1; i < n; ++i)
        if (rows_equal(ver, order[i - 1], order[i])) return true;
    return false;
}

void Relation::merge_delta(Version deduped_delta, const Executor& exec) {
    if (deduped_delta.arity() != arity)
        throw std::invalid_argument("merge_delta: arity mismatch");
    full = full.append(deduped_delta, exec);
    delta = std::move(deduped_delta);
    new_rows = Version(arity);
}

} // namespace colog
