#ifndef NVWEAR_METRICS_HPP
#define NVWEAR_METRICS_HPP

#include <cstdint>
#include <optional>
#include <span>

#include "nvwear/cache.hpp"

namespace nvwear {

/// STT-RAM 4MB LLC (1s retention) and DRAM energy constants.
struct EnergyConstants
{
    double readEnergyJ = 1.015e-9;
    double writeEnergyJ = 1.036e-9;
    double cacheLeakageW = 2.235;
    double memAccessEnergyJ = 70e-9;
    double memLeakageW = 0.18;

    void validate() const;
};

struct RunStats
{
    std::uint64_t reads = 0;
    std::uint64_t writes = 0;
    std::uint64_t hits = 0;
    std::uint64_t misses = 0;
    std::uint64_t fills = 0;
    std::uint64_t writeHits = 0;
    /// Increments of any block's writeCount: write hits plus counted fills.
    std::uint64_t blockWriteEvents = 0;
    /// Dirty victims written back on replacement.
    std::uint64_t writebacks = 0;
    /// Dirty blocks written back by remap flushes.
    std::uint64_t flushWritebacks = 0;
    Cycles cycles = 0;
    std::uint64_t instructions = 0;
    std::uint64_t maxBlockWrites = 0;
    double perBlockWriteSD = 0.0;
    /// Policy runs that changed the mapping.
    std::uint64_t remapRuns = 0;
    /// Times the trigger fired, whether or not anything was swapped.
    std::uint64_t algorithmRuns = 0;
    /// Color pairs exchanged (c1 != c2) across the run.
    std::uint64_t swaps = 0;

    bool operator==(const RunStats &) const = default;
};

/// baseline.maxBlockWrites / technique.maxBlockWrites; nullopt when the
/// technique never wrote a block.
std::optional<double> relativeLifetime(const RunStats &baseline, const RunStats &technique);

/// baseline.cycles / technique.cycles; nullopt when technique.cycles == 0.
std::optional<double> relativePerformance(const RunStats &baseline, const RunStats &technique);

/// L2 dynamic + leakage plus main-memory dynamic + leakage energy in joules.
double energy(const RunStats &stats, const EnergyConstants &consts, double coreFrequencyHz);

/// Misses per thousand instructions; nullopt for zero instructions.
std::optional<double> mpki(std::uint64_t misses, std::uint64_t instructions);

/// Population standard deviation of all block write counts.
double blockWriteSD(const Cache &cache);
double blockWriteSD(std::span<const CacheBlock> blocks);

/// Cycles charged for one access: one per instruction since the previous
/// event plus the access latency.
constexpr Cycles accessCycles(std::uint64_t instructionGap, Cycles latency)
{
    return instructionGap + latency;
}

enum class MeanKind { Geometric, Arithmetic };

/// Geometric mean for ratio metrics, arithmetic for additive ones.
/// Throws std::invalid_argument on empty input or a non-positive value
/// under the geometric mean.
double aggregate(std::span<const double> values, MeanKind kind);

} // namespace nvwear

#endif // NVWEAR_METRICS_HPP
