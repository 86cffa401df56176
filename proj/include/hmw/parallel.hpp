#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

#include "hmw/common.hpp"

namespace hmw {

// Thread count from HMW_THREADS, falling back to 1.
int default_threads();

// Runs f(i) for i in [0,n) over a static block partition. Each index is
// handled by exactly one worker, so results written by index are
// independent of the thread count.
template <class F>
void parallel_for(std::size_t n, int threads, F&& f) {
    if (threads <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    const std::size_t nt = std::min<std::size_t>(static_cast<std::size_t>(threads), n);
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errs(nt);
    for (std::size_t k = 0; k < nt; ++k) {
        pool.emplace_back([&, k] {
            try {
                for (std::size_t i = k; i < n; i += nt) f(i);
            } catch (...) {
                errs[k] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
}

// Fixed-tree pairwise summation.
double pairwise_sum(const double* v, std::size_t n);
cplx pairwise_sum(const cplx* v, std::size_t n);
inline double pairwise_sum(const std::vector<double>& v) { return pairwise_sum(v.data(), v.size()); }
inline cplx pairwise_sum(const std::vector<cplx>& v) { return pairwise_sum(v.data(), v.size()); }

}  // namespace hmw
