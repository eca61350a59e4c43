#pragma once

// Internal striped-row parallel loop. Not installed.

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace netmet::detail {

inline unsigned resolve_threads(unsigned requested, std::size_t work_items) {
    unsigned hw = std::thread::hardware_concurrency();
    unsigned n = requested != 0 ? requested : (hw != 0 ? hw : 1);
    if (work_items < n) n = static_cast<unsigned>(std::max<std::size_t>(work_items, 1));
    return n;
}

// Runs fn(row) for row in [0, rows), striping rows across threads so that
// triangular pair loops stay balanced. fn must only touch per-row state.
template <typename Fn>
void parallel_rows(std::size_t rows, unsigned threads, Fn&& fn) {
    unsigned n = resolve_threads(threads, rows);
    if (n <= 1) {
        for (std::size_t r = 0; r < rows; ++r) fn(r);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(n);
    for (unsigned w = 0; w < n; ++w)
        pool.emplace_back([&fn, w, n, rows] {
            for (std::size_t r = w; r < rows; r += n) fn(r);
        });
    for (auto& t : pool) t.join();
}

}  // namespace netmet::detail
