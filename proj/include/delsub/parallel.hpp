#ifndef DELSUB_PARALLEL_HPP
#define DELSUB_PARALLEL_HPP

#include <atomic>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace delsub {

// Deterministic data-parallel reduce over an index range.
//
// The range is cut into fixed-size chunks whose boundaries depend only on the
// range, never on the thread count; per-chunk results are combined in chunk
// order after all workers join. Any associative combine therefore yields
// byte-identical results for every thread count.
template <typename Result, typename MapChunk, typename Combine>
Result parallel_index_reduce(uint64_t lo, uint64_t hi, Result init, MapChunk map_chunk,
                             Combine combine, unsigned threads, uint64_t chunk_size = 1 << 14) {
    if (hi <= lo) return init;
    if (threads == 0) threads = 1;
    const uint64_t total = hi - lo;
    const uint64_t chunks = (total + chunk_size - 1) / chunk_size;

    std::vector<Result> partial(static_cast<std::size_t>(chunks));
    std::atomic<uint64_t> next{0};
    std::exception_ptr first_error;
    std::atomic<bool> failed{false};

    auto worker = [&] {
        for (;;) {
            const uint64_t c = next.fetch_add(1, std::memory_order_relaxed);
            if (c >= chunks || failed.load(std::memory_order_relaxed)) return;
            const uint64_t a = lo + c * chunk_size;
            const uint64_t b = std::min(hi, a + chunk_size);
            try {
                partial[static_cast<std::size_t>(c)] = map_chunk(a, b);
            } catch (...) {
                if (!failed.exchange(true)) first_error = std::current_exception();
                return;
            }
        }
    };

    if (threads == 1 || chunks == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        const unsigned nworkers = static_cast<unsigned>(std::min<uint64_t>(threads, chunks));
        pool.reserve(nworkers);
        for (unsigned i = 0; i < nworkers; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (failed.load()) std::rethrow_exception(first_error);

    Result acc = std::move(init);
    for (auto& p : partial) acc = combine(std::move(acc), std::move(p));
    return acc;
}

}  // namespace delsub

#endif
