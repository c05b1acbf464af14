#include "groundbound/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace groundbound {

std::size_t worker_count() {
    std::size_t n = std::max(1u, std::thread::hardware_concurrency());
    if (const char *env = std::getenv("GROUNDBOUND_THREADS")) {
        try {
            const long cap = std::stol(env);
            if (cap >= 1) {
                n = std::min<std::size_t>(n, static_cast<std::size_t>(cap));
            }
        } catch (const std::exception &) {
            // ignore malformed values
        }
    }
    return n;
}

void parallel_for(std::size_t n, std::size_t chunks, const std::function<void(std::size_t, std::size_t, std::size_t)> &body) {
    chunks = std::max<std::size_t>(1, std::min(chunks, n));
    if (n == 0) {
        return;
    }
    auto range = [&](std::size_t c) {
        return std::pair{n * c / chunks, n * (c + 1) / chunks};
    };
    const std::size_t workers = std::min(worker_count(), chunks);
    if (workers <= 1) {
        for (std::size_t c = 0; c < chunks; ++c) {
            auto [b, e] = range(c);
            body(b, e, c);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t c = next++; c < chunks; c = next++) {
                try {
                    auto [b, e] = range(c);
                    body(b, e, c);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) {
                        error = std::current_exception();
                    }
                }
            }
        });
    }
    for (auto &t : pool) {
        t.join();
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

} // namespace groundbound
