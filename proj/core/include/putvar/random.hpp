#pragma once

#include <array>
#include <cstdint>

namespace putvar {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
/// Maps a 128-bit counter and 64-bit key to 128 random bits with no state.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key) noexcept;

/// Addressable random stream. Draw `i` of stream (seed, stream_id) is a pure
/// function of the triple, so trial i of any simulation can be regenerated in
/// isolation and in any order.
struct RandomStream {
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;

    /// Two independent U(0,1] variates for draw `index`.
    std::array<double, 2> uniforms(std::uint64_t index) const noexcept;

    /// Two independent N(0,1) variates for draw `index` (Box-Muller).
    std::array<double, 2> normals(std::uint64_t index) const noexcept;

    friend bool operator==(const RandomStream&, const RandomStream&) = default;
};

// Stream-id namespaces. Optimisation (VaR estimation) and backtesting never
// share random numbers, so backtests are out-of-sample.
namespace streams {
inline constexpr std::uint64_t kVarEstimation = 0x0001'0000'0000ULL;
inline constexpr std::uint64_t kOracle = 0x0002'0000'0000ULL;
inline constexpr std::uint64_t kBacktest = 0x0003'0000'0000ULL;

inline RandomStream for_purpose(std::uint64_t seed, std::uint64_t purpose,
                                std::uint64_t index = 0) noexcept {
    return RandomStream{seed, purpose | index};
}
} // namespace streams

} // namespace putvar
