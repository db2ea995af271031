#ifndef NVWEAR_REFERENCE_DIFFERENTIAL_HPP
#define NVWEAR_REFERENCE_DIFFERENTIAL_HPP

#include <cstdint>
#include <string>

namespace nvwear::reference {

struct DifferentialSummary
{
    std::uint64_t cases = 0;
    std::uint64_t steps = 0;
    std::uint64_t mismatches = 0;
    /// Description of the first mismatch, empty if none.
    std::string firstMismatch;

    bool passed() const { return cases > 0 && mismatches == 0; }
};

struct CacheDiffOptions
{
    unsigned colors = 4;
    unsigned setsPerColor = 4;
    unsigned ways = 2;
    std::uint64_t traces = 1000;
    std::uint64_t maxEvents = 10'000;
    /// Probability that a step is a swap-and-flush instead of an access.
    double swapProbability = 0.002;
    bool countFills = true;
    std::uint64_t seed = 1;
};

/// Replay random traces (with occasional remaps) through nvwear::Cache and
/// ReferenceCache; compare hit/miss, dirty evictions, per-block writes and
/// writeback totals.
DifferentialSummary diffCacheModels(const CacheDiffOptions &opt);

struct PlanDiffOptions
{
    std::uint64_t vectors = 10'000;
    std::uint64_t seed = 1;
};

/// Compare planRemap() against straightLinePlan() on random counter
/// vectors in both swap-limit modes.
DifferentialSummary diffPlanners(const PlanDiffOptions &opt);

} // namespace nvwear::reference

#endif
