#pragma once

// Deterministic work splitting: results land in slots indexed by input
// position, so the merged output is identical for any worker count.

#include <atomic>
#include <exception>
#include <thread>
#include <vector>

namespace specdec {

template <typename Fn>
void parallel_for(long long n, int jobs, Fn&& fn) {
    if (n <= 0) return;
    if (jobs <= 1 || n == 1) {
        for (long long i = 0; i < n; ++i) fn(i);
        return;
    }
    int workers = static_cast<int>(std::min<long long>(jobs, n));
    std::atomic<long long> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                long long i = next.fetch_add(1);
                if (i >= n || failed.load()) return;
                try {
                    fn(i);
                } catch (...) {
                    if (!failed.exchange(true)) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failed.load() && error) std::rethrow_exception(error);
}

template <typename R, typename Fn>
std::vector<R> parallel_map(long long n, int jobs, Fn&& fn) {
    std::vector<R> out(static_cast<std::size_t>(n));
    parallel_for(n, jobs, [&](long long i) { out[static_cast<std::size_t>(i)] = fn(i); });
    return out;
}

}  // namespace specdec
