#include "hmw/parallel.hpp"

#include <cstdlib>
#include <string>

namespace hmw {

int default_threads() {
    if (const char* s = std::getenv("HMW_THREADS")) {
        try {
            int n = std::stoi(s);
            if (n >= 1) return n;
        } catch (...) {
        }
    }
    return 1;
}

template <class T>
static T pairwise(const T* v, std::size_t n) {
    if (n == 0) return T{};
    if (n <= 8) {
        T s = v[0];
        for (std::size_t i = 1; i < n; ++i) s += v[i];
        return s;
    }
    const std::size_t h = n / 2;
    return pairwise(v, h) + pairwise(v + h, n - h);
}

double pairwise_sum(const double* v, std::size_t n) { return pairwise(v, n); }
cplx pairwise_sum(const cplx* v, std::size_t n) { return pairwise(v, n); }

}  // namespace hmw
