#pragma once

#include <algorithm>
#include <cstddef>
#include <future>
#include <thread>
#include <vector>

namespace cdepth::detail {

/**
 * Split [0, total) into contiguous ranges, evaluate fn(begin, end) for each
 * (concurrently when the machine has more than one core) and return the
 * results in range order. The split never affects the merged result as
 * long as fn is a pure function of its range.
 */
template <class Fn>
auto map_ranges(std::size_t total, std::size_t min_grain, Fn fn) -> std::vector<decltype(fn(std::size_t{}, std::size_t{}))>
{
    using Result = decltype(fn(std::size_t{}, std::size_t{}));
    const std::size_t workers = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    const std::size_t chunks = std::clamp<std::size_t>(total / std::max<std::size_t>(1, min_grain), 1, workers);
    std::vector<Result> results;
    if (chunks == 1) {
        results.push_back(fn(0, total));
        return results;
    }
    std::vector<std::future<Result>> pending;
    pending.reserve(chunks);
    for (std::size_t k = 0; k < chunks; ++k) {
        const std::size_t begin = total * k / chunks;
        const std::size_t end = total * (k + 1) / chunks;
        pending.push_back(std::async(std::launch::async, fn, begin, end));
    }
    results.reserve(chunks);
    for (auto& f : pending)
        results.push_back(f.get());
    return results;
}

} // namespace cdepth::detail
