#ifndef NVWEAR_CACHE_CONFIG_HPP
#define NVWEAR_CACHE_CONFIG_HPP

#include <cstdint>

namespace nvwear {

using Addr = std::uint64_t;
using Cycles = std::uint64_t;

/// Physical addresses are limited to 48 bits.
inline constexpr Addr kMaxPhysicalAddress = Addr{1} << 48;

/**
 * Geometry and timing of the simulated last-level cache.
 *
 * Defaults describe a 4MB, 16-way STT-RAM LLC with 64B blocks on a 2GHz
 * core and 4KB pages. Latencies are whole core cycles: a 0.973ns read is
 * 2 cycles, the relaxed-retention write is 12 cycles, memory is 160 cycles.
 */
struct CacheConfig
{
    std::uint64_t cacheSizeBytes = 4u << 20;
    std::uint32_t associativity = 16;
    std::uint32_t blockSizeBytes = 64;
    std::uint32_t pageSizeBytes = 4096;

    Cycles hitReadLatency = 2;
    Cycles hitWriteLatency = 12;
    Cycles missPenalty = 160;
    /// Cycles to program the cells of a newly filled block, added to missPenalty.
    Cycles fillLatency = 12;
    double coreFrequencyHz = 2.0e9;

    /// When true a fill counts as a physical write of the block. When false
    /// only demand writes (write hits and write-miss fills) are counted.
    bool countFills = true;

    /// Throws ConfigError unless every invariant on the geometry holds.
    void validate() const;
};

/// Derived, validated geometry. Construct through CacheGeometry::from().
struct CacheGeometry
{
    std::uint32_t numSets = 0;
    std::uint32_t associativity = 0;
    std::uint32_t numColors = 0;
    std::uint32_t setsPerColor = 0;
    std::uint32_t blockSizeBytes = 0;
    std::uint32_t pageSizeBytes = 0;

    static CacheGeometry from(const CacheConfig &cfg);

    std::uint32_t colorOfSet(std::uint32_t setIndex) const
    {
        return setIndex / setsPerColor;
    }
};

constexpr bool isPowerOfTwo(std::uint64_t v) { return v != 0 && (v & (v - 1)) == 0; }

} // namespace nvwear

#endif // NVWEAR_CACHE_CONFIG_HPP
