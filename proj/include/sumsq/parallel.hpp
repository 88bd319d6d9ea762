#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace sumsq {

/// Splits [0, total) into `shards` contiguous ranges and runs work(begin, end)
/// on each, one thread per shard. Partials come back in shard order so callers
/// can merge deterministically.
template <typename Partial, typename Work>
std::vector<Partial> run_shards(std::uint64_t total, unsigned shards, Work work) {
    shards = std::max(1u, shards);
    if (shards > total) shards = static_cast<unsigned>(std::max<std::uint64_t>(1, total));
    std::vector<Partial> partials(shards);
    const std::uint64_t chunk = (total + shards - 1) / shards;
    auto range = [&](unsigned s) {
        const std::uint64_t begin = std::min<std::uint64_t>(total, s * chunk);
        const std::uint64_t end = std::min<std::uint64_t>(total, begin + chunk);
        return std::pair{begin, end};
    };
    if (shards == 1) {
        partials[0] = work(std::uint64_t{0}, total);
        return partials;
    }
    std::vector<std::exception_ptr> errors(shards);
    std::vector<std::thread> threads;
    threads.reserve(shards);
    for (unsigned s = 0; s < shards; ++s) {
        threads.emplace_back([&, s] {
            try {
                auto [b, e] = range(s);
                partials[s] = work(b, e);
            } catch (...) {
                errors[s] = std::current_exception();
            }
        });
    }
    for (auto& t : threads) t.join();
    for (auto& err : errors)
        if (err) std::rethrow_exception(err);
    return partials;
}

}  // namespace sumsq
