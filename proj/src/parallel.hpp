#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace cutspec::detail {

/// Worker count from CUTSPEC_THREADS (unset or 0 means hardware concurrency).
inline std::size_t thread_count() {
    std::size_t n = 0;
    if (const char* env = std::getenv("CUTSPEC_THREADS")) n = static_cast<std::size_t>(std::strtoul(env, nullptr, 10));
    // hardware_concurrency() is a syscall on Linux; small searches call this often.
    static const std::size_t hardware = std::max(1u, std::thread::hardware_concurrency());
    if (n == 0) n = hardware;
    return n;
}

/// Runs body(task) for task in [0, tasks). Tasks are claimed dynamically, so
/// callers must make each task's result independent of which thread ran it
/// and reduce in task order afterwards.
template <class F>
void parallel_tasks(std::size_t tasks, F&& body) {
    const std::size_t workers = std::min(thread_count(), tasks);
    if (workers <= 1) {
        for (std::size_t t = 0; t < tasks; ++t) body(t);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto run = [&] {
        for (;;) {
            const std::size_t t = next.fetch_add(1);
            if (t >= tasks) return;
            try {
                body(t);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                next.store(tasks);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run);
    run();
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace cutspec::detail
