#pragma once

#include <cstdint>
#include <random>

namespace flagprod {

/// Identifies one reproducible random stream: the experiment seed plus the
/// trial index. Streams for distinct trial indices are independent, and a
/// stream depends only on this pair, never on execution order.
struct RngSeed
{
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
};

namespace detail {

constexpr std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace detail

inline std::mt19937_64 make_engine(RngSeed s)
{
    const std::uint64_t a = detail::splitmix64(s.seed);
    const std::uint64_t b = detail::splitmix64(a ^ detail::splitmix64(s.stream + 0x6a09e667f3bcc909ULL));
    std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                      static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
    return std::mt19937_64(seq);
}

// Uniform double in [0, 1) from the top 53 bits; platform independent, unlike
// the standard distributions.
inline double uniform01(std::mt19937_64& eng)
{
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

}  // namespace flagprod
