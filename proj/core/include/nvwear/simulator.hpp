#ifndef NVWEAR_SIMULATOR_HPP
#define NVWEAR_SIMULATOR_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "nvwear/cache.hpp"
#include "nvwear/color_map.hpp"
#include "nvwear/metrics.hpp"
#include "nvwear/wear_policy.hpp"
#include "nvwear/workload.hpp"

namespace nvwear {

struct SimulationConfig
{
    CacheConfig cache;
    PolicyKind policy = PolicyKind::Swl;
    PolicyParams params;
    EnergyConstants energy;
};

/// One firing of the policy trigger.
struct IntervalRecord
{
    std::uint64_t index = 0;
    Cycles cycle = 0;
    bool ran = false;
    double sdw = 0.0;
    std::uint32_t nHigher = 0;
    std::uint32_t nColorToSwap = 0;
    std::vector<SwapPair> swaps;
    std::uint64_t writebacks = 0;
};

struct MappingSnapshot
{
    std::uint64_t interval = 0;
    std::vector<Color> colorOfRegion;
};

struct SimulationResult
{
    RunStats stats;
    double energyJ = 0.0;
    std::optional<double> mpki;
    std::vector<IntervalRecord> intervals;
    /// Interval 0 is the initial identity map; later entries follow each
    /// interval that changed the mapping.
    std::vector<MappingSnapshot> mappings;
    std::vector<std::uint64_t> colorWritesGlobal;
};

/**
 * Drives one policy over one access stream.
 *
 * Per event: decompose the address through the current mapping, access the
 * cache, charge cycles, route block writes to the policy counters, and when
 * the trigger fires apply the policy's remap and flushes.
 */
class Simulator
{
  public:
    explicit Simulator(const SimulationConfig &cfg);

    void step(const TraceEvent &ev);
    SimulationResult finish() const;

    const Cache &cache() const { return cache_; }
    const MappingTable &mapping() const { return map_; }
    const PolicyState &policyState() const { return policy_; }
    const RunStats &stats() const { return stats_; }
    const std::vector<IntervalRecord> &intervals() const { return intervals_; }

  private:
    void runPolicy();

    SimulationConfig cfg_;
    Cache cache_;
    MappingTable map_;
    PolicyState policy_;
    RunStats stats_;
    std::uint64_t lastIcount_ = 0;
    std::uint32_t xorRegister_ = 0;
    std::vector<IntervalRecord> intervals_;
    std::vector<MappingSnapshot> mappings_;
};

using EventSource = std::function<std::optional<TraceEvent>()>;

SimulationResult simulate(const SimulationConfig &cfg, std::span<const TraceEvent> events);
SimulationResult simulate(const SimulationConfig &cfg, const EventSource &source);

} // namespace nvwear

#endif // NVWEAR_SIMULATOR_HPP
