#include "nvwear/color_map.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

#include "nvwear/cache.hpp"
#include "nvwear/errors.hpp"

namespace nvwear {

std::uint32_t
computeNumColors(const CacheConfig &cfg)
{
    const std::uint64_t denom = std::uint64_t{cfg.pageSizeBytes} * cfg.associativity;
    if (denom == 0)
        throw ConfigError("page size and associativity must be non-zero");
    if (cfg.cacheSizeBytes % denom != 0)
        throw ConfigError("cache size is not a multiple of pageSize x associativity");
    const std::uint64_t n = cfg.cacheSizeBytes / denom;
    if (n == 0)
        throw ConfigError("cache holds zero colors");
    if (n > UINT32_MAX)
        throw ConfigError("too many colors");
    return static_cast<std::uint32_t>(n);
}

MappingTable::MappingTable(std::uint32_t numColors)
    : colorOf_(numColors), regionOf_(numColors)
{
    if (numColors == 0)
        throw ConfigError("mapping table needs at least one color");
    std::iota(colorOf_.begin(), colorOf_.end(), Color{0});
    std::iota(regionOf_.begin(), regionOf_.end(), Region{0});
}

void
MappingTable::swapColors(Color c1, Color c2)
{
    if (c1 >= size() || c2 >= size())
        throw std::out_of_range("swapColors: color out of range (" + std::to_string(c1) +
                                ", " + std::to_string(c2) + ") for " +
                                std::to_string(size()) + " colors");
    if (c1 == c2)
        return;
    const Region r1 = regionOf_[c1];
    const Region r2 = regionOf_[c2];
    colorOf_[r1] = c2;
    colorOf_[r2] = c1;
    regionOf_[c1] = r2;
    regionOf_[c2] = r1;
}

void
MappingTable::assign(std::span<const Color> colorOfRegion)
{
    if (colorOfRegion.size() != colorOf_.size())
        throw ConfigError("mapping size mismatch");
    std::vector<bool> seen(colorOf_.size(), false);
    for (Color c : colorOfRegion) {
        if (c >= size() || seen[c])
            throw ConfigError("mapping is not a permutation");
        seen[c] = true;
    }
    for (Region r = 0; r < size(); ++r) {
        colorOf_[r] = colorOfRegion[r];
        regionOf_[colorOfRegion[r]] = r;
    }
}

bool
MappingTable::isIdentity() const
{
    for (Region r = 0; r < size(); ++r) {
        if (colorOf_[r] != r)
            return false;
    }
    return true;
}

std::uint64_t
applyRemap(MappingTable &map, Cache &cache, std::span<const SwapPair> swaps)
{
    if (map.size() != cache.geometry().numColors)
        throw ConfigError("mapping table does not match cache color count");
    std::uint64_t writebacks = 0;
    for (const auto &[c1, c2] : swaps) {
        map.swapColors(c1, c2);
        if (c1 == c2)
            continue;
        writebacks += cache.flushColor(c1);
        writebacks += cache.flushColor(c2);
    }
    return writebacks;
}

} // namespace nvwear
