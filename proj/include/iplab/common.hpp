#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>
#include <functional>

namespace iplab {

/// Thrown when a requested computation would exceed the configured state
/// (or memory) budget.  The message suggests the Monte Carlo path where
/// one exists.
struct BudgetError : std::runtime_error {
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

/// Numeric tolerances used across the library.  Values are contracts, not
/// tuning knobs; tests pin them.
struct Tolerances {
    double law_normalization = 1e-12;  // explicit-law probabilities sum to 1
    double generator_residual = 1e-10; // stationarity / detailed-balance residuals
    double row_sum = 1e-12;            // generator and kernel row sums
    double kernel_truncation = 1e-10;  // uniformization Poisson-tail mass
    double mixing_rel = 1e-6;          // bisection relative time tolerance
    double eigen_rel = 1e-9;           // eigenvalue relative tolerance
    double quadrature = 1e-8;          // adaptive quadrature absolute tolerance
    double inequality = 1e-9;          // additive slack on verified inequalities
};

struct Budgets {
    std::int64_t max_states = 5'000'000; // enumeration refuses above this
    std::int64_t dense_states = 2000;    // dense eigensolver limit
    std::int64_t kernel_states = 4096;   // dense transition-kernel limit
};

inline const Tolerances& default_tols() {
    static const Tolerances t{};
    return t;
}

inline const Budgets& default_budgets() {
    static const Budgets b{};
    return b;
}

/// Runs fn(i) for i in [0, count) on up to `threads` workers.  Results are
/// written by index, so the output is identical for any thread count.
template <typename Fn>
void parallel_for_index(std::int64_t count, int threads, Fn&& fn) {
    if (threads <= 1 || count < 2) {
        for (std::int64_t i = 0; i < count; ++i) fn(i);
        return;
    }
    const int workers = static_cast<int>(std::min<std::int64_t>(threads, count));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([w, workers, count, &fn] {
            for (std::int64_t i = w; i < count; i += workers) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace iplab
