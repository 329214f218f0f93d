#pragma once
#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

#include "srg/rng.hpp"

namespace srg::harness {

inline unsigned resolve_threads(unsigned requested) {
    if (requested != 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw != 0 ? hw : 1;
}

// Runs fn(run_index, run_seed) for every run_index in [0, n_runs) on a
// worker pool. Seeds derive from (master_seed, run_index) alone and results
// land in a vector indexed by run_index, so parallel execution is
// bit-identical to serial.
template <class R>
std::vector<R> run_ensemble(std::uint64_t n_runs, unsigned threads, std::uint64_t master_seed,
                            const std::function<R(std::uint64_t, std::uint64_t)>& fn) {
    std::vector<R> results(n_runs);
    const unsigned n_workers =
        static_cast<unsigned>(std::min<std::uint64_t>(resolve_threads(threads), n_runs));
    if (n_workers <= 1) {
        for (std::uint64_t i = 0; i < n_runs; ++i)
            results[i] = fn(i, derive_run_seed(master_seed, i));
        return results;
    }
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr first_error;
    std::atomic<bool> failed{false};
    std::vector<std::thread> workers;
    workers.reserve(n_workers);
    for (unsigned w = 0; w < n_workers; ++w) {
        workers.emplace_back([&] {
            while (!failed.load(std::memory_order_relaxed)) {
                const std::uint64_t i = next.fetch_add(1, std::memory_order_relaxed);
                if (i >= n_runs) return;
                try {
                    results[i] = fn(i, derive_run_seed(master_seed, i));
                } catch (...) {
                    if (!failed.exchange(true)) first_error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : workers) t.join();
    if (first_error) std::rethrow_exception(first_error);
    return results;
}

}  // namespace srg::harness
