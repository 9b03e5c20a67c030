#include "drbsde/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace drbsde {

unsigned thread_budget() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    unsigned budget = std::min(hw, 8u);
    if (const char* env = std::getenv("DRBSDE_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v >= 1) budget = std::min<unsigned>(static_cast<unsigned>(v), hw);
    }
    return budget;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
    const unsigned budget = thread_budget();
    if (count == 0) return;
    if (budget <= 1 || count < 4) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }

    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(budget, count));
    std::exception_ptr first_error;
    std::mutex error_mutex;

    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            const std::size_t lo = count * w / workers;
            const std::size_t hi = count * (w + 1) / workers;
            try {
                for (std::size_t i = lo; i < hi; ++i) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace drbsde
