#ifndef FKM_PARALLEL_HPP
#define FKM_PARALLEL_HPP

// Order-independent reductions over pre-generated samples. Max and min are
// exact on doubles, so results do not depend on the number of workers.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>
#include <vector>

namespace fkm {

enum class Reduce { max, min };

namespace detail {

/// NaN counts as the worst value for either direction.
inline double reduce_pair(Reduce r, double a, double b) {
    if (r == Reduce::max) {
        if (std::isnan(a) || std::isnan(b)) {
            return std::numeric_limits<double>::infinity();
        }
        return std::max(a, b);
    }
    if (std::isnan(a) || std::isnan(b)) {
        return -std::numeric_limits<double>::infinity();
    }
    return std::min(a, b);
}

}  // namespace detail

/// Reduces f(0), ..., f(n-1) with `jobs` threads (jobs <= 1 runs inline).
template <typename F>
double parallel_reduce(std::size_t n, int jobs, Reduce r, F f) {
    const double init = r == Reduce::max ? -std::numeric_limits<double>::infinity()
                                         : std::numeric_limits<double>::infinity();
    const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), n));
    if (workers == 1) {
        double acc = init;
        for (std::size_t i = 0; i < n; ++i) {
            acc = detail::reduce_pair(r, acc, f(i));
        }
        return acc;
    }
    std::vector<double> partial(workers, init);
    std::exception_ptr error;
    std::mutex error_mutex;
    {
        std::vector<std::jthread> threads;
        threads.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            threads.emplace_back([&, w] {
                try {
                    double acc = init;
                    for (std::size_t i = w; i < n; i += workers) {
                        acc = detail::reduce_pair(r, acc, f(i));
                    }
                    partial[w] = acc;
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) {
                        error = std::current_exception();
                    }
                }
            });
        }
    }
    if (error) {
        std::rethrow_exception(error);
    }
    double acc = init;
    for (double v : partial) {
        acc = detail::reduce_pair(r, acc, v);
    }
    return acc;
}

}  // namespace fkm

#endif
