#include "nvwear/cache_config.hpp"

#include <string>

#include "nvwear/color_map.hpp"
#include "nvwear/errors.hpp"

namespace nvwear {

void
CacheConfig::validate() const
{
    if (!isPowerOfTwo(cacheSizeBytes))
        throw ConfigError("cache size must be a power of two");
    if (!isPowerOfTwo(associativity))
        throw ConfigError("associativity must be a power of two");
    if (!isPowerOfTwo(blockSizeBytes))
        throw ConfigError("block size must be a power of two");
    if (!isPowerOfTwo(pageSizeBytes))
        throw ConfigError("page size must be a power of two");
    if (blockSizeBytes > pageSizeBytes || pageSizeBytes > cacheSizeBytes)
        throw ConfigError("require blockSize <= pageSize <= cacheSize");
    if (std::uint64_t{blockSizeBytes} * associativity > cacheSizeBytes)
        throw ConfigError("cache too small for one set of the requested associativity");
    if (!(coreFrequencyHz > 0.0))
        throw ConfigError("core frequency must be positive");
    // Throws if the color count is not a positive integer.
    computeNumColors(*this);
}

CacheGeometry
CacheGeometry::from(const CacheConfig &cfg)
{
    cfg.validate();
    CacheGeometry g;
    g.numSets = static_cast<std::uint32_t>(
        cfg.cacheSizeBytes / (std::uint64_t{cfg.blockSizeBytes} * cfg.associativity));
    g.associativity = cfg.associativity;
    g.numColors = computeNumColors(cfg);
    g.setsPerColor = cfg.pageSizeBytes / cfg.blockSizeBytes;
    g.blockSizeBytes = cfg.blockSizeBytes;
    g.pageSizeBytes = cfg.pageSizeBytes;
    if (std::uint64_t{g.numColors} * g.setsPerColor != g.numSets)
        throw ConfigError("colors x setsPerColor (" + std::to_string(g.numColors) + " x " +
                          std::to_string(g.setsPerColor) + ") does not cover " +
                          std::to_string(g.numSets) + " sets");
    return g;
}

} // namespace nvwear
