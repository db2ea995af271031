#include "nvwear/simulator.hpp"

#include <algorithm>

#include "nvwear/errors.hpp"

namespace nvwear {

namespace {

PolicyParams
checkedParams(const SimulationConfig &cfg)
{
    cfg.cache.validate();
    cfg.energy.validate();
    const std::uint32_t n = computeNumColors(cfg.cache);
    cfg.params.validate(n);
    if (cfg.policy == PolicyKind::Xor && !isPowerOfTwo(n))
        throw ConfigError("xor policy needs a power-of-two color count");
    return cfg.params;
}

} // namespace

Simulator::Simulator(const SimulationConfig &cfg)
    : cfg_(cfg), cache_(cfg.cache), map_(cache_.geometry().numColors),
      policy_(cache_.geometry().numColors, checkedParams(cfg))
{
    mappings_.push_back({0, {map_.colors().begin(), map_.colors().end()}});
}

void
Simulator::step(const TraceEvent &ev)
{
    const auto d = decomposeAddress(ev.addr, cache_.geometry(), map_);
    const AccessOutcome out = cache_.access(d.setIndex, d.tag, ev.kind);

    if (ev.kind == AccessKind::Write)
        ++stats_.writes;
    else
        ++stats_.reads;
    if (out.hit) {
        ++stats_.hits;
        if (ev.kind == AccessKind::Write)
            ++stats_.writeHits;
    } else {
        ++stats_.misses;
    }
    if (out.fillOccurred)
        ++stats_.fills;
    if (out.evictedDirty)
        ++stats_.writebacks;

    const std::uint64_t gap = ev.icount > lastIcount_ ? ev.icount - lastIcount_ : 0;
    lastIcount_ = std::max(lastIcount_, ev.icount);
    stats_.instructions = lastIcount_;
    stats_.cycles += accessCycles(gap, out.latency);

    if (!out.blockWritten)
        return;
    ++stats_.blockWriteEvents;
    policy_.observeWrite(cache_.geometry().colorOfSet(d.setIndex));
    if (cfg_.policy != PolicyKind::Static && policy_.checkTrigger(stats_.cycles))
        runPolicy();
}

void
Simulator::runPolicy()
{
    IntervalRecord rec;
    rec.index = ++stats_.algorithmRuns;
    rec.cycle = stats_.cycles;

    if (cfg_.policy == PolicyKind::Swl) {
        RemapDecision d = policy_.planRemap();
        rec.ran = d.ran;
        rec.sdw = d.sdw;
        rec.nHigher = d.nHigher;
        rec.nColorToSwap = d.nColorToSwap;
        rec.swaps = std::move(d.swaps);
    } else {
        // XOR comparator: moving from register R to R' sends every color c to
        // c ^ (R ^ R'), i.e. N/2 disjoint swaps covering the whole cache.
        rec.sdw = stddevWrites(policy_.writeLastInterval());
        policy_.resetInterval();
        const std::uint32_t n = map_.size();
        const std::uint32_t next = xorRegisterFor(rec.index, n);
        const std::uint32_t delta = next ^ xorRegister_;
        xorRegister_ = next;
        rec.ran = true;
        if (delta != 0) {
            for (Color c = 0; c < n; ++c) {
                if (c < (c ^ delta))
                    rec.swaps.emplace_back(c, c ^ delta);
            }
        }
        rec.nColorToSwap = static_cast<std::uint32_t>(rec.swaps.size());
    }

    rec.writebacks = applyRemap(map_, cache_, rec.swaps);
    stats_.flushWritebacks += rec.writebacks;
    std::uint64_t effective = 0;
    for (const auto &[a, b] : rec.swaps) {
        if (a != b)
            ++effective;
    }
    stats_.swaps += effective;
    if (effective > 0) {
        ++stats_.remapRuns;
        mappings_.push_back({rec.index, {map_.colors().begin(), map_.colors().end()}});
    }
    intervals_.push_back(std::move(rec));
}

SimulationResult
Simulator::finish() const
{
    SimulationResult r;
    r.stats = stats_;
    r.stats.maxBlockWrites = cache_.maxBlockWrites();
    r.stats.perBlockWriteSD = blockWriteSD(cache_);
    r.energyJ = energy(r.stats, cfg_.energy, cfg_.cache.coreFrequencyHz);
    r.mpki = mpki(r.stats.misses, r.stats.instructions);
    r.intervals = intervals_;
    r.mappings = mappings_;
    r.colorWritesGlobal.assign(policy_.writeGlobal().begin(), policy_.writeGlobal().end());
    return r;
}

SimulationResult
simulate(const SimulationConfig &cfg, std::span<const TraceEvent> events)
{
    Simulator sim(cfg);
    for (const auto &ev : events)
        sim.step(ev);
    return sim.finish();
}

SimulationResult
simulate(const SimulationConfig &cfg, const EventSource &source)
{
    Simulator sim(cfg);
    while (auto ev = source())
        sim.step(*ev);
    return sim.finish();
}

} // namespace nvwear
