#ifndef NVWEAR_REFERENCE_REFERENCE_CACHE_HPP
#define NVWEAR_REFERENCE_REFERENCE_CACHE_HPP

#include <cstdint>
#include <list>
#include <vector>

namespace nvwear::reference {

/**
 * Deliberately naive model of the colored LRU cache, kept independent of
 * nvwear::Cache so the two can be replayed against each other.
 *
 * Each set is an explicit recency list (front = most recent) searched
 * linearly. Address bits are sliced with shifts and masks, and the region
 * to color map is a plain vector.
 */
class ReferenceCache
{
  public:
    ReferenceCache(unsigned colors, unsigned setsPerColor, unsigned ways,
                   unsigned blockBytes, bool countFills);

    struct Result
    {
        bool hit;
        bool evictedDirty;
    };

    Result access(std::uint64_t addr, bool isWrite);

    /// Exchange the regions of two colors and flush both (unless equal).
    void swapAndFlush(unsigned c1, unsigned c2);

    /// writeCount of (set, way), with way numbered as in the optimized model.
    std::uint64_t writeCount(unsigned set, unsigned way) const;
    std::uint64_t writebacks() const { return writebacks_; }
    std::uint64_t flushWritebacks() const { return flushWritebacks_; }
    unsigned numSets() const { return colors_ * setsPerColor_; }
    unsigned ways() const { return ways_; }
    const std::vector<unsigned> &colorOfRegion() const { return colorOfRegion_; }

  private:
    struct Line
    {
        unsigned way;
        bool valid = false;
        bool dirty = false;
        std::uint64_t tag = 0;
        std::uint64_t writes = 0;
    };

    unsigned log2(unsigned v) const;

    unsigned colors_, setsPerColor_, ways_;
    unsigned blockBits_, setBits_, colorBits_;
    bool countFills_;
    std::vector<unsigned> colorOfRegion_;
    std::vector<std::list<Line>> sets_;
    std::uint64_t writebacks_ = 0;
    std::uint64_t flushWritebacks_ = 0;
};

} // namespace nvwear::reference

#endif
