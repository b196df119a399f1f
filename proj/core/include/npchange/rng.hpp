#pragma once

#include <cstdint>
#include <random>

namespace npchange {

/// splitmix64 finalizer; used to derive independent child seeds from a
/// master seed and one or more stream tags so that parallel replications,
/// inner permutation draws and sibling segments get decorrelated streams
/// regardless of scheduling order.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
    return mix64(seed ^ mix64(tag));
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag_a, std::uint64_t tag_b) {
    return derive_seed(derive_seed(seed, tag_a), tag_b);
}

inline std::mt19937_64 make_engine(std::uint64_t seed) {
    return std::mt19937_64(seed);
}

// Stream tags separating the independent randomness consumers.
namespace stream {
inline constexpr std::uint64_t regressor = 0x7265677265730001ULL;
inline constexpr std::uint64_t noise = 0x6e6f697365000001ULL;
inline constexpr std::uint64_t permutation = 0x7065726d00000001ULL;
} // namespace stream

} // namespace npchange
