#pragma once

#include <cstddef>
#include <memory>
#include <thread>

#include <tbb/blocked_range.h>
#include <tbb/parallel_for.h>
#include <tbb/parallel_sort.h>
#include <tbb/task_arena.h>

namespace colog {

/// Worker pool handle for intra-operator parallelism.
///
/// Every parallel loop in the engine writes to disjoint, pre-allocated
/// output slots and every parallel sort uses a strict total order, so
/// results are identical for any worker count and any scheduling.
class Executor {
public:
    /// workers == 0 selects hardware concurrency.
    explicit Executor(unsigned workers = 0)
        : workers_(workers ? workers : default_workers()),
          arena_(std::make_shared<tbb::task_arena>(static_cast<int>(workers_))) {}

    unsigned workers() const { return workers_; }

    /// f(i) for i in [0, n); iterations must write disjoint locations.
    template <typename F>
    void for_each(std::size_t n, F&& f) const {
        if (n == 0) return;
        arena_->execute([&] {
            tbb::parallel_for(tbb::blocked_range<std::size_t>(0, n, kGrain),
                              [&](const tbb::blocked_range<std::size_t>& r) {
                                  for (std::size_t i = r.begin(); i != r.end(); ++i) f(i);
                              });
        });
    }

    /// f(begin, end) over a fixed chunking of [0, n). Chunk boundaries depend
    /// only on n, never on the worker count, so per-chunk partial results can
    /// be combined sequentially without changing any output.
    template <typename F>
    void for_blocks(std::size_t n, F&& f) const {
        if (n == 0) return;
        const std::size_t chunks = (n + kGrain - 1) / kGrain;
        arena_->execute([&] {
            tbb::parallel_for(std::size_t(0), chunks, [&](std::size_t c) {
                const std::size_t begin = c * kGrain;
                const std::size_t end = begin + kGrain < n ? begin + kGrain : n;
                f(c, begin, end);
            });
        });
    }

    std::size_t block_count(std::size_t n) const { return n == 0 ? 0 : (n + kGrain - 1) / kGrain; }

    template <typename It, typename Cmp>
    void sort(It first, It last, Cmp cmp) const {
        arena_->execute([&] { tbb::parallel_sort(first, last, cmp); });
    }

    static unsigned default_workers() {
        unsigned hw = std::thread::hardware_concurrency();
        return hw ? hw : 1;
    }

private:
    static constexpr std::size_t kGrain = 4096;

    unsigned workers_;
    std::shared_ptr<tbb::task_arena> arena_;
};

} // namespace colog
