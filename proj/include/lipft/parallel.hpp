#pragma once

#include <cstddef>
#include <exception>
#include <type_traits>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace lipft {

// Grid kernels are embarrassingly parallel: every output index is computed
// independently and written into its own slot, so the result is bit-identical
// whatever the thread count. The serial variant is kept as the reference
// implementation for tests and for the benchmark target.

inline bool& serial_mode_flag() {
    static bool flag = false;
    return flag;
}

// Forces parallel_map down the serial reference path while alive.
struct ScopedSerial {
    ScopedSerial() { serial_mode_flag() = true; }
    ~ScopedSerial() { serial_mode_flag() = false; }
    ScopedSerial(const ScopedSerial&) = delete;
    ScopedSerial& operator=(const ScopedSerial&) = delete;
};

template <typename F>
auto serial_map(std::size_t n, F&& f) {
    using T = std::invoke_result_t<F&, std::size_t>;
    std::vector<T> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
    return out;
}

template <typename F>
auto parallel_map(std::size_t n, F&& f) {
    using T = std::invoke_result_t<F&, std::size_t>;
    if (serial_mode_flag()) return serial_map(n, f);
    std::vector<T> out(n);
    std::exception_ptr first_error = nullptr;
#ifdef _OPENMP
    #pragma omp parallel for schedule(static)
#endif
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
        try {
            out[static_cast<std::size_t>(i)] = f(static_cast<std::size_t>(i));
        } catch (...) {
#ifdef _OPENMP
            #pragma omp critical(lipft_parallel_map_error)
#endif
            if (!first_error) first_error = std::current_exception();
        }
    }
    if (first_error) std::rethrow_exception(first_error);
    return out;
}

// Fixed-order pairwise summation. Used for every reduction that feeds a
// reported number, so results do not depend on accumulation order.
inline double pairwise_sum(const double* x, std::size_t n) {
    if (n == 0) return 0.0;
    if (n <= 8) {
        double s = x[0];
        for (std::size_t i = 1; i < n; ++i) s += x[i];
        return s;
    }
    std::size_t h = n / 2;
    return pairwise_sum(x, h) + pairwise_sum(x + h, n - h);
}

inline double pairwise_sum(const std::vector<double>& x) {
    return pairwise_sum(x.data(), x.size());
}

} // namespace lipft
