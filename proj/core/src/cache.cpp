#include "nvwear/cache.hpp"

#include <algorithm>
#include <cassert>

#include "nvwear/errors.hpp"

namespace nvwear {

DecomposedAddress
decomposeAddress(Addr addr, const CacheGeometry &geom, const MappingTable &map)
{
    if (map.size() != geom.numColors)
        throw ConfigError("mapping table has " + std::to_string(map.size()) +
                          " entries, cache has " + std::to_string(geom.numColors) +
                          " colors");
    assert(addr < kMaxPhysicalAddress);

    const std::uint64_t page = addr / geom.pageSizeBytes;
    DecomposedAddress d;
    d.region = static_cast<Region>(page % geom.numColors);
    const Color color = map.colorOf(d.region);
    const auto withinColor =
        static_cast<std::uint32_t>((addr % geom.pageSizeBytes) / geom.blockSizeBytes);
    d.setIndex = color * geom.setsPerColor + withinColor;
    d.tag = page / geom.numColors;
    return d;
}

Cache::Cache(const CacheConfig &cfg)
    : cfg_(cfg), geom_(CacheGeometry::from(cfg)),
      blocks_(std::size_t{geom_.numSets} * geom_.associativity)
{
    for (std::uint32_t s = 0; s < geom_.numSets; ++s) {
        auto ways = mutableSet(s);
        for (std::uint32_t w = 0; w < geom_.associativity; ++w)
            ways[w].lruRank = w;
    }
}

void
Cache::promote(std::span<CacheBlock> set, std::uint32_t way)
{
    const std::uint32_t old = set[way].lruRank;
    for (auto &b : set) {
        if (b.lruRank < old)
            ++b.lruRank;
    }
    set[way].lruRank = 0;
}

AccessOutcome
Cache::access(std::uint32_t setIndex, std::uint64_t tag, AccessKind kind)
{
    assert(setIndex < geom_.numSets);
    auto ways = mutableSet(setIndex);
    AccessOutcome out;

    for (std::uint32_t w = 0; w < ways.size(); ++w) {
        CacheBlock &b = ways[w];
        if (b.valid && b.tag == tag) {
            out.hit = true;
            out.way = w;
            promote(ways, w);
            if (kind == AccessKind::Write) {
                b.dirty = true;
                ++b.writeCount;
                out.blockWritten = true;
                out.latency = cfg_.hitWriteLatency;
            } else {
                out.latency = cfg_.hitReadLatency;
            }
            return out;
        }
    }

    // Victim: least recently used invalid way if any, else the LRU way.
    std::uint32_t victim = 0;
    std::int64_t bestInvalid = -1;
    for (std::uint32_t w = 0; w < ways.size(); ++w) {
        if (!ways[w].valid && static_cast<std::int64_t>(ways[w].lruRank) > bestInvalid) {
            bestInvalid = ways[w].lruRank;
            victim = w;
        }
    }
    if (bestInvalid < 0) {
        for (std::uint32_t w = 0; w < ways.size(); ++w) {
            if (ways[w].lruRank == geom_.associativity - 1)
                victim = w;
        }
    }

    CacheBlock &b = ways[victim];
    out.evictedDirty = b.valid && b.dirty;
    out.fillOccurred = true;
    out.way = victim;
    b.tag = tag;
    b.valid = true;
    b.dirty = kind == AccessKind::Write;
    if (cfg_.countFills || kind == AccessKind::Write) {
        ++b.writeCount;
        out.blockWritten = true;
    }
    promote(ways, victim);
    out.latency = cfg_.missPenalty + cfg_.fillLatency;
    return out;
}

std::uint64_t
Cache::flushColor(Color color)
{
    if (color >= geom_.numColors)
        throw std::out_of_range("flushColor: color " + std::to_string(color) +
                                " out of range");
    std::uint64_t dirty = 0;
    const std::uint32_t first = color * geom_.setsPerColor;
    for (std::uint32_t s = first; s < first + geom_.setsPerColor; ++s) {
        for (auto &b : mutableSet(s)) {
            if (b.valid && b.dirty)
                ++dirty;
            b.valid = false;
            b.dirty = false;
            b.tag = 0;
        }
    }
    return dirty;
}

std::uint64_t
Cache::flushAll()
{
    std::uint64_t dirty = 0;
    for (Color c = 0; c < geom_.numColors; ++c)
        dirty += flushColor(c);
    return dirty;
}

std::uint64_t
Cache::maxBlockWrites() const
{
    std::uint64_t m = 0;
    for (const auto &b : blocks_)
        m = std::max(m, b.writeCount);
    return m;
}

std::uint64_t
Cache::totalBlockWrites() const
{
    std::uint64_t sum = 0;
    for (const auto &b : blocks_)
        sum += b.writeCount;
    return sum;
}

bool
Cache::contains(std::uint32_t setIndex, std::uint64_t tag) const
{
    return std::ranges::any_of(set(setIndex), [tag](const CacheBlock &b) {
        return b.valid && b.tag == tag;
    });
}

std::vector<std::uint64_t>
Cache::colorWriteTotals() const
{
    std::vector<std::uint64_t> totals(geom_.numColors, 0);
    const std::size_t perColor = std::size_t{geom_.setsPerColor} * geom_.associativity;
    for (std::size_t i = 0; i < blocks_.size(); ++i)
        totals[i / perColor] += blocks_[i].writeCount;
    return totals;
}

} // namespace nvwear
