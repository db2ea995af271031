#include "nvwear/simulator.hpp"

#include <algorithm>
#include <numeric>

#include <gtest/gtest.h>

#include "nvwear/errors.hpp"
#include "test_util.hpp"

using namespace nvwear;

namespace {

SimulationConfig
smallSim(PolicyKind policy)
{
    SimulationConfig s;
    s.cache.cacheSizeBytes = 256 * 1024; // 16 colors, 4 ways, 4KiB pages
    s.cache.associativity = 4;
    s.policy = policy;
    s.params.kWrites = 2000;
    s.params.minGapCycles = 20'000;
    return s;
}

GeneratorSpec
workload(GeneratorKind kind, std::uint64_t events)
{
    GeneratorSpec g;
    g.kind = kind;
    g.numEvents = events;
    g.pageCount = 64;
    g.writeFraction = 0.7;
    return g;
}

double
maxColorShare(const SimulationResult &r)
{
    const auto &v = r.colorWritesGlobal;
    const double total = std::accumulate(v.begin(), v.end(), 0.0);
    return static_cast<double>(*std::ranges::max_element(v)) / total;
}

} // namespace

TEST(Simulator, NoEventsNoCycles)
{
    const auto r = simulate(smallSim(PolicyKind::Swl), std::span<const TraceEvent>{});
    EXPECT_EQ(r.stats.cycles, 0u);
    EXPECT_FALSE(r.mpki.has_value());
}

TEST(Simulator, ReadHitAfterFiveInstructionsCostsSevenCycles)
{
    Simulator sim(smallSim(PolicyKind::Static));
    sim.step({AccessKind::Read, 0x1000, 5});
    const Cycles afterMiss = sim.stats().cycles;
    EXPECT_EQ(afterMiss, 5u + 160u + 12u);
    sim.step({AccessKind::Read, 0x1000, 10});
    EXPECT_EQ(sim.stats().cycles - afterMiss, 7u);
    sim.step({AccessKind::Write, 0x1000, 15});
    EXPECT_EQ(sim.stats().cycles - afterMiss, 7u + 17u);
}

TEST(Simulator, StaticNeverRemaps)
{
    const auto events = generate(workload(GeneratorKind::Zipf, 50'000));
    const auto r = simulate(smallSim(PolicyKind::Static), events);
    EXPECT_EQ(r.stats.remapRuns, 0u);
    EXPECT_EQ(r.stats.flushWritebacks, 0u);
    EXPECT_EQ(r.stats.algorithmRuns, 0u);
    ASSERT_EQ(r.mappings.size(), 1u);
    for (Region i = 0; i < r.mappings[0].colorOfRegion.size(); ++i)
        EXPECT_EQ(r.mappings[0].colorOfRegion[i], i);
    EXPECT_DOUBLE_EQ(*relativeLifetime(r.stats, r.stats), 1.0);
}

TEST(Simulator, ColorCountersSumToBlockWrites)
{
    const auto events = generate(workload(GeneratorKind::Hotset, 40'000));
    for (auto p : {PolicyKind::Static, PolicyKind::Swl, PolicyKind::Xor}) {
        const auto r = simulate(smallSim(p), events);
        const auto sum = std::accumulate(r.colorWritesGlobal.begin(), r.colorWritesGlobal.end(),
                                         std::uint64_t{0});
        EXPECT_EQ(sum, r.stats.blockWriteEvents);
        EXPECT_EQ(r.stats.blockWriteEvents, r.stats.fills + r.stats.writeHits);
        EXPECT_LE(r.stats.misses, r.stats.reads + r.stats.writes);
    }
}

TEST(Simulator, DemandAccessesIdenticalAcrossPolicies)
{
    const auto events = generate(workload(GeneratorKind::Zipf, 30'000));
    const auto s = simulate(smallSim(PolicyKind::Static), events);
    for (auto p : {PolicyKind::Swl, PolicyKind::Xor}) {
        const auto r = simulate(smallSim(p), events);
        EXPECT_EQ(r.stats.reads, s.stats.reads);
        EXPECT_EQ(r.stats.writes, s.stats.writes);
        EXPECT_EQ(r.stats.instructions, s.stats.instructions);
    }
}

TEST(Simulator, SwlOnRoundRobinNeverSwaps)
{
    auto g = workload(GeneratorKind::RoundRobin, 200'000);
    g.pageCount = 256;
    const auto events = generate(g);
    const auto r = simulate(smallSim(PolicyKind::Swl), events);
    EXPECT_GT(r.stats.algorithmRuns, 0u);
    EXPECT_EQ(r.stats.swaps, 0u);
    for (const auto &rec : r.intervals) {
        EXPECT_FALSE(rec.ran);
        EXPECT_LT(rec.sdw, 75.0);
    }
}

TEST(Simulator, SwlSpreadsSingleRegionWrites)
{
    // Every access goes to pages of region 0.
    std::vector<TraceEvent> events;
    std::uint64_t icount = 0;
    for (std::uint64_t i = 0; i < 100'000; ++i) {
        const Addr page = 16 * (i % 3);
        events.push_back({AccessKind::Write, page * 4096 + (i % 64) * 64, icount += 5});
    }
    const auto s = simulate(smallSim(PolicyKind::Static), events);
    const auto w = simulate(smallSim(PolicyKind::Swl), events);
    EXPECT_DOUBLE_EQ(maxColorShare(s), 1.0);
    EXPECT_LT(maxColorShare(w), maxColorShare(s));
    const auto used = std::ranges::count_if(w.colorWritesGlobal, [](auto v) { return v > 0; });
    EXPECT_GE(used, 2);
    EXPECT_GT(*relativeLifetime(s.stats, w.stats), 1.0);
}

TEST(Simulator, XorFlushesWholeCacheEachInterval)
{
    const auto events = generate(workload(GeneratorKind::Uniform, 60'000));
    Simulator sim(smallSim(PolicyKind::Xor));
    std::uint64_t seen = 0;
    for (const auto &ev : events) {
        sim.step(ev);
        if (sim.intervals().size() != seen) {
            seen = sim.intervals().size();
            const auto &rec = sim.intervals().back();
            EXPECT_EQ(rec.swaps.size(), 8u);
            for (const auto &b : sim.cache().blocks())
                ASSERT_FALSE(b.valid);
            const auto want = xorMapping(xorRegisterFor(rec.index, 16), 16);
            EXPECT_TRUE(std::ranges::equal(sim.mapping().colors(), want));
        }
    }
    EXPECT_GT(seen, 1u);
    const auto r = sim.finish();
    EXPECT_EQ(r.stats.remapRuns, r.stats.algorithmRuns);
}

TEST(Simulator, XorRequiresPowerOfTwoColors)
{
    auto cfg = smallSim(PolicyKind::Xor);
    cfg.cache.cacheSizeBytes = 3 * 4096 * 4; // 3 colors; not a valid cache anyway
    EXPECT_THROW(Simulator{cfg}, ConfigError);
}

TEST(Simulator, DeterministicReplay)
{
    const auto events = generate(workload(GeneratorKind::Zipf, 30'000));
    const auto a = simulate(smallSim(PolicyKind::Swl), events);
    const auto b = simulate(smallSim(PolicyKind::Swl), events);
    EXPECT_EQ(a.stats, b.stats);
    EXPECT_EQ(a.colorWritesGlobal, b.colorWritesGlobal);
}
