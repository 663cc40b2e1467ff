#include "sps/parallel.hpp"

#include <algorithm>
#include <exception>
#include <mutex>

namespace sps {

namespace {
int g_workers = 0;  // 0 = unset
thread_local bool t_inside = false;  // nested calls run serially
}

int worker_count()
{
    if (g_workers > 0) return g_workers;
    if (const char* env = std::getenv("SPS_WORKERS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

void set_worker_count(int n) { g_workers = n; }

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn)
{
    const int workers = static_cast<int>(
        std::min<std::size_t>(static_cast<std::size_t>(worker_count()), n));
    if (workers <= 1 || t_inside) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto body = [&] {
        t_inside = true;
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(body);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace sps
