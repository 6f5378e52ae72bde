#include "dspaces/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace dspaces {

namespace {

unsigned default_threads() {
    if (const char* env = std::getenv("DYADIC_SPACES_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v >= 1) return static_cast<unsigned>(v);
        } catch (const std::exception&) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::atomic<unsigned> g_threads{0};
thread_local bool t_in_worker = false;

}  // namespace

unsigned thread_count() {
    unsigned t = g_threads.load();
    if (t == 0) {
        t = default_threads();
        g_threads.store(t);
    }
    return t;
}

void set_thread_count(unsigned n) { g_threads.store(std::max(1u, n)); }

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body, std::size_t min_parallel) {
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(thread_count(), n));
    if (t_in_worker || workers <= 1 || n < min_parallel) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t begin = n * w / workers;
        const std::size_t end = n * (w + 1) / workers;
        pool.emplace_back([&, begin, end] {
            t_in_worker = true;
            try {
                for (std::size_t i = begin; i < end; ++i) body(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace dspaces
