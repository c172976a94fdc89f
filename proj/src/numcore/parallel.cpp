#include "fraclab/numcore.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>

namespace fraclab {

int worker_count() {
    const char* env = std::getenv("FRACLAB_THREADS");
    long requested = 0; // 0 means "auto"
    if (env && *env) {
        char* end = nullptr;
        requested = std::strtol(env, &end, 10);
        if (end == env || requested < 0) requested = 0;
    }
    if (requested == 0) {
        const unsigned hw = std::thread::hardware_concurrency();
        return hw == 0 ? 1 : static_cast<int>(hw);
    }
    return static_cast<int>(requested);
}

void parallel_for(int n_tasks, const std::function<void(int)>& fn) {
    if (n_tasks <= 0) return;
    const int workers = std::min(worker_count(), n_tasks);
    if (workers <= 1) {
        for (int i = 0; i < n_tasks; ++i) fn(i);
        return;
    }
    std::atomic<int> next(0);
    std::exception_ptr first_error = nullptr;
    std::atomic<bool> failed(false);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            while (true) {
                const int i = next.fetch_add(1);
                if (i >= n_tasks || failed.load()) return;
                try {
                    fn(i);
                } catch (...) {
                    if (!failed.exchange(true)) first_error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace fraclab
