#ifndef NVWEAR_CACHE_HPP
#define NVWEAR_CACHE_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "nvwear/cache_config.hpp"
#include "nvwear/color_map.hpp"

namespace nvwear {

enum class AccessKind : std::uint8_t { Read, Write };

struct CacheBlock
{
    std::uint64_t tag = 0;
    bool valid = false;
    bool dirty = false;
    /// 0 is most recently used, associativity - 1 least recently used.
    std::uint32_t lruRank = 0;
    /// Physical writes to this block's cells. Never reset, not even by a flush.
    std::uint64_t writeCount = 0;
};

struct AccessOutcome
{
    bool hit = false;
    bool evictedDirty = false;
    bool fillOccurred = false;
    /// writeCount of the touched block was incremented.
    bool blockWritten = false;
    std::uint32_t way = 0;
    Cycles latency = 0;
};

struct DecomposedAddress
{
    std::uint32_t setIndex = 0;
    std::uint64_t tag = 0;
    Region region = 0;

    bool operator==(const DecomposedAddress &) const = default;
};

/// Page-colored index mapping. The tag is everything above the region bits,
/// so remapping a region never changes which tags match.
DecomposedAddress decomposeAddress(Addr addr, const CacheGeometry &geom,
                                   const MappingTable &map);

/**
 * Set-associative, write-back, write-allocate cache with true LRU.
 *
 * Each access reports whether the block's cells were programmed so the
 * caller can route the write to the wear-leveling policy.
 */
class Cache
{
  public:
    explicit Cache(const CacheConfig &cfg);

    const CacheGeometry &geometry() const { return geom_; }
    const CacheConfig &config() const { return cfg_; }

    AccessOutcome access(std::uint32_t setIndex, std::uint64_t tag, AccessKind kind);

    /// Invalidate every block of `color`. Returns how many were dirty.
    std::uint64_t flushColor(Color color);
    std::uint64_t flushAll();

    std::uint64_t maxBlockWrites() const;
    std::uint64_t totalBlockWrites() const;

    /// Whether `tag` is resident in `setIndex` (no LRU update).
    bool contains(std::uint32_t setIndex, std::uint64_t tag) const;

    std::span<const CacheBlock> blocks() const { return blocks_; }
    std::span<const CacheBlock> set(std::uint32_t setIndex) const
    {
        return std::span<const CacheBlock>(blocks_).subspan(
            std::size_t{setIndex} * geom_.associativity, geom_.associativity);
    }

    /// Per-color sum of block write counts.
    std::vector<std::uint64_t> colorWriteTotals() const;

  private:
    std::span<CacheBlock> mutableSet(std::uint32_t setIndex)
    {
        return std::span<CacheBlock>(blocks_).subspan(
            std::size_t{setIndex} * geom_.associativity, geom_.associativity);
    }
    static void promote(std::span<CacheBlock> set, std::uint32_t way);

    CacheConfig cfg_;
    CacheGeometry geom_;
    std::vector<CacheBlock> blocks_;
};

} // namespace nvwear

#endif // NVWEAR_CACHE_HPP
