#pragma once

#include <cstdint>

namespace fraczeta {

/// 64-bit finalizer with good avalanche behaviour; the basis of all sampling
/// in this project.
inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Counter-based uniform variate: a pure function of (seed, index, dim).
/// Any contiguous or strided shard of indices can therefore be generated on
/// any worker in any order, and results are independent of the parallelism
/// degree by construction.  `dim` selects independent coordinates of the
/// same logical sample.
inline std::uint64_t counter_bits(std::uint64_t seed, std::uint64_t index, std::uint64_t dim = 0) {
    std::uint64_t z = splitmix64(seed ^ splitmix64(index + 0x632BE59BD9B4E019ull));
    return splitmix64(z ^ splitmix64(dim + 0xD1B54A32D192ED03ull));
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(std::uint64_t seed, std::uint64_t index, std::uint64_t dim = 0) {
    return static_cast<double>(counter_bits(seed, index, dim) >> 11) * 0x1.0p-53;
}

} // namespace fraczeta
