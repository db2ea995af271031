#include "nvwear/metrics.hpp"

#include <cmath>
#include <stdexcept>

#include "nvwear/errors.hpp"

namespace nvwear {

void
EnergyConstants::validate() const
{
    for (double v : {readEnergyJ, writeEnergyJ, cacheLeakageW, memAccessEnergyJ, memLeakageW}) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw ConfigError("energy constants must be strictly positive");
    }
}

std::optional<double>
relativeLifetime(const RunStats &baseline, const RunStats &technique)
{
    if (technique.maxBlockWrites == 0)
        return std::nullopt;
    return static_cast<double>(baseline.maxBlockWrites) /
           static_cast<double>(technique.maxBlockWrites);
}

std::optional<double>
relativePerformance(const RunStats &baseline, const RunStats &technique)
{
    if (technique.cycles == 0)
        return std::nullopt;
    return static_cast<double>(baseline.cycles) / static_cast<double>(technique.cycles);
}

double
energy(const RunStats &s, const EnergyConstants &c, double coreFrequencyHz)
{
    if (!(coreFrequencyHz > 0.0))
        throw ConfigError("core frequency must be positive");
    const double seconds = static_cast<double>(s.cycles) / coreFrequencyHz;
    const double memAccesses =
        static_cast<double>(s.misses) + static_cast<double>(s.writebacks) +
        static_cast<double>(s.flushWritebacks);
    return static_cast<double>(s.reads) * c.readEnergyJ +
           static_cast<double>(s.blockWriteEvents) * c.writeEnergyJ +
           c.cacheLeakageW * seconds + memAccesses * c.memAccessEnergyJ +
           c.memLeakageW * seconds;
}

std::optional<double>
mpki(std::uint64_t misses, std::uint64_t instructions)
{
    if (instructions == 0)
        return std::nullopt;
    return static_cast<double>(misses) * 1000.0 / static_cast<double>(instructions);
}

double
blockWriteSD(std::span<const CacheBlock> blocks)
{
    if (blocks.empty())
        return 0.0;
    long double mean = 0.0L;
    for (const auto &b : blocks)
        mean += b.writeCount;
    mean /= blocks.size();
    long double acc = 0.0L;
    for (const auto &b : blocks) {
        const long double d = b.writeCount - mean;
        acc += d * d;
    }
    return static_cast<double>(std::sqrt(acc / blocks.size()));
}

double
blockWriteSD(const Cache &cache)
{
    return blockWriteSD(cache.blocks());
}

double
aggregate(std::span<const double> values, MeanKind kind)
{
    if (values.empty())
        throw std::invalid_argument("aggregate of an empty set");
    if (kind == MeanKind::Arithmetic) {
        double sum = 0.0;
        for (double v : values)
            sum += v;
        return sum / static_cast<double>(values.size());
    }
    double logSum = 0.0;
    for (double v : values) {
        if (!(v > 0.0))
            throw std::invalid_argument("geometric mean needs positive values");
        logSum += std::log(v);
    }
    return std::exp(logSum / static_cast<double>(values.size()));
}

} // namespace nvwear
