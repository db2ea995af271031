#include "nvwear/reference/reference_cache.hpp"

#include <stdexcept>

namespace nvwear::reference {

ReferenceCache::ReferenceCache(unsigned colors, unsigned setsPerColor, unsigned ways,
                               unsigned blockBytes, bool countFills)
    : colors_(colors), setsPerColor_(setsPerColor), ways_(ways),
      blockBits_(log2(blockBytes)), setBits_(log2(setsPerColor)), colorBits_(log2(colors)),
      countFills_(countFills), colorOfRegion_(colors), sets_(colors * setsPerColor)
{
    for (unsigned r = 0; r < colors; ++r)
        colorOfRegion_[r] = r;
    for (auto &set : sets_) {
        for (unsigned w = 0; w < ways; ++w)
            set.push_back(Line{w});
    }
}

unsigned
ReferenceCache::log2(unsigned v) const
{
    if (v == 0 || (v & (v - 1)) != 0)
        throw std::invalid_argument("reference cache needs power-of-two dimensions");
    unsigned b = 0;
    while ((1u << b) != v)
        ++b;
    return b;
}

ReferenceCache::Result
ReferenceCache::access(std::uint64_t addr, bool isWrite)
{
    const std::uint64_t page = addr >> (blockBits_ + setBits_);
    const unsigned region = static_cast<unsigned>(page & (colors_ - 1));
    const std::uint64_t tag = page >> colorBits_;
    const unsigned within = static_cast<unsigned>((addr >> blockBits_) & (setsPerColor_ - 1));
    auto &set = sets_[colorOfRegion_[region] * setsPerColor_ + within];

    for (auto it = set.begin(); it != set.end(); ++it) {
        if (it->valid && it->tag == tag) {
            if (isWrite) {
                it->dirty = true;
                ++it->writes;
            }
            set.splice(set.begin(), set, it);
            return {true, false};
        }
    }

    // Least recent invalid line, otherwise the least recent line.
    auto victim = std::prev(set.end());
    for (auto it = set.rbegin(); it != set.rend(); ++it) {
        if (!it->valid) {
            victim = std::prev(it.base());
            break;
        }
    }
    const bool dirtyEvict = victim->valid && victim->dirty;
    if (dirtyEvict)
        ++writebacks_;
    victim->valid = true;
    victim->dirty = isWrite;
    victim->tag = tag;
    if (countFills_ || isWrite)
        ++victim->writes;
    set.splice(set.begin(), set, victim);
    return {false, dirtyEvict};
}

void
ReferenceCache::swapAndFlush(unsigned c1, unsigned c2)
{
    if (c1 == c2)
        return;
    for (unsigned r = 0; r < colors_; ++r) {
        if (colorOfRegion_[r] == c1)
            colorOfRegion_[r] = c2;
        else if (colorOfRegion_[r] == c2)
            colorOfRegion_[r] = c1;
    }
    for (unsigned c : {c1, c2}) {
        for (unsigned s = c * setsPerColor_; s < (c + 1) * setsPerColor_; ++s) {
            for (auto &line : sets_[s]) {
                if (line.valid && line.dirty)
                    ++flushWritebacks_;
                line.valid = false;
                line.dirty = false;
            }
        }
    }
}

std::uint64_t
ReferenceCache::writeCount(unsigned set, unsigned way) const
{
    for (const auto &line : sets_.at(set)) {
        if (line.way == way)
            return line.writes;
    }
    throw std::out_of_range("no such way");
}

} // namespace nvwear::reference
