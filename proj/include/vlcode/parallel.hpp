#pragma once

#include <cstdint>
#include <thread>
#include <vector>

namespace vlcode {

/*
 * Runs fn(trial) for trial in [0, trials) on `threads` workers.  Callers
 * that need deterministic output must write per-trial results into
 * preallocated slots or use exactly associative reducers (integer sums);
 * every helper in this library does one of the two, which is what makes
 * results independent of the thread count.
 */
template <class Fn>
void parallel_for_trials(std::uint64_t trials, int threads, Fn&& fn) {
    if (threads <= 1) {
        for (std::uint64_t t = 0; t < trials; ++t) fn(t);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
            for (std::uint64_t t = static_cast<std::uint64_t>(w); t < trials;
                 t += static_cast<std::uint64_t>(threads))
                fn(t);
        });
    }
    for (std::thread& th : pool) th.join();
}

}  // namespace vlcode
