#include "nvwear/metrics.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace nvwear;

TEST(RelativeLifetime, Ratio)
{
    RunStats base, tech;
    base.maxBlockWrites = 1000;
    tech.maxBlockWrites = 250;
    EXPECT_DOUBLE_EQ(*relativeLifetime(base, tech), 4.0);
    EXPECT_DOUBLE_EQ(*relativeLifetime(base, base), 1.0);
    tech.maxBlockWrites = 0;
    EXPECT_FALSE(relativeLifetime(base, tech).has_value());
}

TEST(Energy, ZeroActivityOneSecond)
{
    RunStats s;
    s.cycles = 2'000'000'000;
    EXPECT_NEAR(energy(s, EnergyConstants{}, 2e9), 2.415, 2.415e-9);
}

TEST(Energy, ReadsOnly)
{
    RunStats s;
    s.reads = 1'000'000;
    EXPECT_NEAR(energy(s, EnergyConstants{}, 2e9), 1.015e-3, 1e-15);
}

TEST(Energy, EachMemoryAccessAdds70nJ)
{
    RunStats s;
    s.cycles = 12345;
    s.reads = 10;
    const double e0 = energy(s, EnergyConstants{}, 2e9);
    s.flushWritebacks += 1;
    EXPECT_NEAR(energy(s, EnergyConstants{}, 2e9) - e0, 70e-9, 1e-18);
    s.misses += 1;
    s.writebacks += 1;
    EXPECT_NEAR(energy(s, EnergyConstants{}, 2e9) - e0, 210e-9, 1e-18);
}

TEST(Energy, MonotoneInEveryCount)
{
    std::mt19937_64 rng(1);
    const EnergyConstants c;
    for (int i = 0; i < 200; ++i) {
        RunStats s;
        s.reads = rng() % 1000;
        s.blockWriteEvents = rng() % 1000;
        s.misses = rng() % 1000;
        s.writebacks = rng() % 1000;
        s.flushWritebacks = rng() % 1000;
        s.cycles = rng() % 100000;
        const double e = energy(s, c, 2e9);
        for (auto member : {&RunStats::reads, &RunStats::blockWriteEvents, &RunStats::misses,
                            &RunStats::writebacks, &RunStats::flushWritebacks,
                            &RunStats::cycles}) {
            RunStats t = s;
            t.*member += 1 + rng() % 10;
            ASSERT_GT(energy(t, c, 2e9), e);
        }
    }
}

TEST(Mpki, Examples)
{
    EXPECT_DOUBLE_EQ(*mpki(500, 1'000'000), 0.5);
    EXPECT_DOUBLE_EQ(*mpki(0, 1'000'000), 0.0);
    EXPECT_DOUBLE_EQ(*mpki(500, 2'000'000), *mpki(500, 1'000'000) / 2);
    EXPECT_FALSE(mpki(5, 0).has_value());
}

TEST(Cycles, ReadHitWithInstructionGap)
{
    // Hand sum: 5 instruction cycles + 2-cycle read hit.
    EXPECT_EQ(accessCycles(5, CacheConfig{}.hitReadLatency), 7u);
    EXPECT_EQ(CacheConfig{}.hitWriteLatency - CacheConfig{}.hitReadLatency, 10u);
}

TEST(BlockWriteSD, Examples)
{
    std::vector<CacheBlock> blocks(4);
    for (auto &b : blocks)
        b.writeCount = 3;
    EXPECT_EQ(blockWriteSD(blocks), 0.0);
    blocks[0].writeCount = 4;
    blocks[1].writeCount = blocks[2].writeCount = blocks[3].writeCount = 0;
    // mean 1, variance (9 + 1 + 1 + 1) / 4 = 3.
    EXPECT_NEAR(blockWriteSD(blocks), std::sqrt(3.0), 1e-12);
}

TEST(BlockWriteSD, ZeroSdMeansMaxEqualsMean)
{
    Cache cache(test::smallConfig(2, 2, 2));
    EXPECT_EQ(blockWriteSD(cache), 0.0);
    EXPECT_EQ(cache.maxBlockWrites(), 0u);
}

TEST(Aggregate, Means)
{
    const std::vector<double> g{2, 8};
    EXPECT_NEAR(aggregate(g, MeanKind::Geometric), 4.0, 1e-12);
    const std::vector<double> a{1, 3};
    EXPECT_DOUBLE_EQ(aggregate(a, MeanKind::Arithmetic), 2.0);
    const std::vector<double> same{3.7, 3.7, 3.7};
    EXPECT_NEAR(aggregate(same, MeanKind::Geometric), 3.7, 1e-12);
    const std::vector<double> bad{1.0, 0.0};
    EXPECT_THROW(aggregate(bad, MeanKind::Geometric), std::invalid_argument);
    EXPECT_THROW(aggregate({}, MeanKind::Arithmetic), std::invalid_argument);
}
