#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <vector>

namespace busfactor {

/// Runs fn(i) for i in [0, n) on up to `workers` OpenMP threads. Iterations must
/// be independent. If any iteration throws, the exception from the smallest
/// failing index is rethrown after the loop, so failures do not depend on
/// scheduling.
template <typename Fn>
void parallel_for(std::size_t n, int workers, Fn&& fn) {
    std::vector<std::exception_ptr> errors(n);
    const auto count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 1) num_threads(std::max(1, workers))
    for (long i = 0; i < count; ++i) {
        try {
            fn(static_cast<std::size_t>(i));
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace busfactor
