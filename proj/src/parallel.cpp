#include "assc/parallel.hpp"

#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace assc {

int worker_count() {
    const char* env = std::getenv("ASSC_THREADS");
    if (env != nullptr && *env != '\0') {
        const long parsed = std::strtol(env, nullptr, 10);
        if (parsed > 0) return static_cast<int>(parsed);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for(std::size_t n, int workers,
                  const std::function<void(std::size_t, std::size_t)>& fn) {
    if (n == 0) return;
    const std::size_t w = workers <= 1 ? 1 : std::min<std::size_t>(workers, n);
    if (w == 1) {
        fn(0, n);
        return;
    }

    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto run_chunk = [&](std::size_t begin, std::size_t end) {
        try {
            fn(begin, end);
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
        }
    };

    const std::size_t chunk = (n + w - 1) / w;
    std::vector<std::thread> threads;
    threads.reserve(w - 1);
    for (std::size_t t = 1; t < w; ++t) {
        const std::size_t begin = t * chunk;
        if (begin >= n) break;
        threads.emplace_back(run_chunk, begin, std::min(n, begin + chunk));
    }
    run_chunk(0, std::min(n, chunk));
    for (auto& th : threads) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace assc
