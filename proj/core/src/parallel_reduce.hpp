#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace putvar::detail {

// Fixed-size chunks whose partial results are combined in index order, so the
// floating-point result is identical for any thread count.
inline constexpr std::int64_t kReduceChunk = 8192;

template <class Acc, class Body>
Acc chunked_reduce(std::int64_t n, Body&& body) {
    const std::int64_t chunks = (n + kReduceChunk - 1) / kReduceChunk;
    std::vector<Acc> partial(static_cast<std::size_t>(chunks));
#pragma omp parallel for schedule(static) if (chunks > 1)
    for (std::int64_t c = 0; c < chunks; ++c) {
        const std::int64_t begin = c * kReduceChunk;
        const std::int64_t end = begin + kReduceChunk < n ? begin + kReduceChunk : n;
        partial[static_cast<std::size_t>(c)] = body(begin, end);
    }
    Acc total{};
    for (const Acc& p : partial) total += p;
    return total;
}

} // namespace putvar::detail
