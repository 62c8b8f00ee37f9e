#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace parcat {

// Thread count from PARCAT_THREADS (positive integer), else hardware concurrency.
int thread_count();
// Tests force a value here; 0 restores the environment default.
void set_thread_override(int n);

// Runs body(i) for i in [0, n) across worker threads and returns results in
// index order, so output never depends on scheduling.
template <class R>
std::vector<R> parallel_collect(std::size_t n, const std::function<R(std::size_t)>& body) {
    std::vector<R> out(n);
    std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(thread_count()), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) out[i] = body(i);
        return out;
    }
    std::vector<std::exception_ptr> errors(n);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += workers) {
                try {
                    out[i] = body(i);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    // rethrow the lowest-index failure, same as the sequential path would
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

}  // namespace parcat
