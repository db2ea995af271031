#ifndef NVWEAR_COLOR_MAP_HPP
#define NVWEAR_COLOR_MAP_HPP

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "nvwear/cache_config.hpp"

namespace nvwear {

class Cache;

using Color = std::uint32_t;
using Region = std::uint32_t;
using SwapPair = std::pair<Color, Color>;

/// Number of cache colors: cacheSize / (pageSize * associativity).
/// Throws ConfigError when the quotient is zero or not an integer.
std::uint32_t computeNumColors(const CacheConfig &cfg);

/**
 * Software mapping from memory regions (low bits of the physical page
 * number) to cache colors. Always a bijection; starts as the identity.
 */
class MappingTable
{
  public:
    explicit MappingTable(std::uint32_t numColors);

    std::uint32_t size() const { return static_cast<std::uint32_t>(colorOf_.size()); }

    Color colorOf(Region r) const { return colorOf_[r]; }
    Region regionOf(Color c) const { return regionOf_[c]; }

    std::span<const Color> colors() const { return colorOf_; }
    std::span<const Region> regions() const { return regionOf_; }

    /// Exchange the regions currently mapped to c1 and c2. No-op if c1 == c2.
    /// Throws std::out_of_range for a color >= size().
    void swapColors(Color c1, Color c2);

    /// Replace the whole mapping. Throws ConfigError unless `colorOfRegion`
    /// is a permutation of 0..size()-1.
    void assign(std::span<const Color> colorOfRegion);

    bool isIdentity() const;

    bool operator==(const MappingTable &) const = default;

  private:
    std::vector<Color> colorOf_;
    std::vector<Region> regionOf_;
};

/// Swap each pair in order and flush both colors of every non-trivial pair.
/// Returns the number of dirty blocks written back by the flushes.
std::uint64_t applyRemap(MappingTable &map, Cache &cache,
                         std::span<const SwapPair> swaps);

} // namespace nvwear

#endif // NVWEAR_COLOR_MAP_HPP
