#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace feq {

/// Evaluates fn(i) for i in [0, count) on up to `threads` workers and returns
/// the results in index order. If any call throws, the exception from the
/// lowest failing index is rethrown after all workers finish, so failures
/// are reported identically for every thread count.
template <class Result, class Fn>
std::vector<Result> parallel_map(std::size_t count, unsigned threads, Fn&& fn) {
    std::vector<Result> results(count);
    std::vector<std::exception_ptr> errors(count);
    const unsigned workers =
        static_cast<unsigned>(std::clamp<std::size_t>(threads == 0 ? 1 : threads, 1,
                                                      std::max<std::size_t>(count, 1)));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
            try {
                results[i] = fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    for (const auto& err : errors)
        if (err) std::rethrow_exception(err);
    return results;
}

}  // namespace feq
