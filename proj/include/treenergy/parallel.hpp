#pragma once

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace treenergy {

// Evaluates fn(0..count-1) on up to `workers` threads and returns results
// in index order, so output never depends on scheduling. The first thrown
// exception is rethrown on the calling thread.
template <typename Fn>
auto parallel_map(int count, int workers, Fn&& fn) -> std::vector<decltype(fn(0))> {
    using R = decltype(fn(0));
    std::vector<R> results(count);
    if (count == 0) return results;
    if (workers < 1) workers = 1;
    if (workers == 1 || count == 1) {
        for (int i = 0; i < count; ++i) results[i] = fn(i);
        return results;
    }

    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    auto worker = [&] {
        while (true) {
            int i = next.fetch_add(1);
            if (i >= count) return;
            try {
                results[i] = fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mu);
                if (!error) error = std::current_exception();
                next.store(count);
                return;
            }
        }
    };

    int n_threads = std::min(workers, count);
    std::vector<std::thread> threads;
    threads.reserve(n_threads);
    for (int t = 0; t < n_threads; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
    if (error) std::rethrow_exception(error);
    return results;
}

}  // namespace treenergy
