#ifndef NVWEAR_WEAR_POLICY_HPP
#define NVWEAR_WEAR_POLICY_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nvwear/cache_config.hpp"
#include "nvwear/color_map.hpp"

namespace nvwear {

enum class PolicyKind { Static, Swl, Xor };

/// How the above-average color count and lambda combine into the number of
/// pairs swapped per run. Min treats lambda as an upper limit.
enum class SwapLimitMode { Min, Max };

std::string_view toString(PolicyKind k);
std::string_view toString(SwapLimitMode m);
PolicyKind parsePolicyKind(std::string_view s);
SwapLimitMode parseSwapLimitMode(std::string_view s);

struct PolicyParams
{
    double beta = 75.0;
    /// Defaults to max(1, numColors / 4).
    std::optional<std::uint32_t> lambda;
    std::uint64_t kWrites = 100'000;
    Cycles minGapCycles = 3'000'000;
    SwapLimitMode swapLimitMode = SwapLimitMode::Min;

    /// Throws ConfigError for beta < 0, K == 0 or lambda outside [1, max(1, N/2)].
    void validate(std::uint32_t numColors) const;
    std::uint32_t lambdaFor(std::uint32_t numColors) const;
};

struct RemapDecision
{
    bool ran = false;
    std::vector<SwapPair> swaps;
    double sdw = 0.0;
    double average = 0.0;
    std::uint32_t nHigher = 0;
    std::uint32_t nColorToSwap = 0;

    bool operator==(const RemapDecision &) const = default;
};

/// Population standard deviation. Zero for an empty or single-element input.
double stddevWrites(std::span<const std::uint64_t> values);

/**
 * One run of the inter-set wear-leveling algorithm over per-color counters.
 *
 * Below the beta threshold nothing is swapped. Otherwise colors hot in the
 * last interval (descending interval writes) are paired with the least worn
 * colors (ascending cumulative writes); ties go to the lower color index.
 * The pair count is combine(nHigher, lambda), capped at numColors / 2.
 */
RemapDecision planRemap(std::span<const std::uint64_t> lastInterval,
                        std::span<const std::uint64_t> global, double beta,
                        std::uint32_t lambda, SwapLimitMode mode);

/// Per-color write counters and the K-writes / minimum-gap trigger.
class PolicyState
{
  public:
    PolicyState(std::uint32_t numColors, const PolicyParams &params);

    void observeWrite(Color color);

    /**
     * True when K writes have accumulated and at least minGapCycles elapsed
     * since the last run. Reaching K too early sets the deferred flag and
     * restarts the write count, so the next chance is after another K writes.
     */
    bool checkTrigger(Cycles nowCycle);

    /// planRemap over the current counters, then clears the interval counters.
    RemapDecision planRemap();

    void resetInterval();

    std::uint32_t numColors() const { return static_cast<std::uint32_t>(global_.size()); }
    std::span<const std::uint64_t> writeGlobal() const { return global_; }
    std::span<const std::uint64_t> writeLastInterval() const { return lastInterval_; }
    std::uint64_t writesSinceCheck() const { return writesSinceCheck_; }
    Cycles lastRunCycle() const { return lastRunCycle_; }
    bool deferred() const { return deferred_; }
    double beta() const { return beta_; }
    std::uint32_t lambda() const { return lambda_; }
    std::uint64_t kWrites() const { return kWrites_; }
    Cycles minGapCycles() const { return minGap_; }
    SwapLimitMode swapLimitMode() const { return mode_; }

  private:
    std::vector<std::uint64_t> global_;
    std::vector<std::uint64_t> lastInterval_;
    double beta_;
    std::uint32_t lambda_;
    std::uint64_t kWrites_;
    Cycles minGap_;
    SwapLimitMode mode_;
    std::uint64_t writesSinceCheck_ = 0;
    Cycles lastRunCycle_ = 0;
    bool deferred_ = false;
};

/// Remap register value for the given 1-based interval of the XOR
/// comparator. Cycles 1, 2, ..., N-1, 1, ... (never 0); always 0 if N == 1.
std::uint32_t xorRegisterFor(std::uint64_t intervalIndex, std::uint32_t numColors);

/// Region r maps to color r XOR reg. N must be a power of two and reg < N.
std::vector<Color> xorMapping(std::uint32_t reg, std::uint32_t numColors);

} // namespace nvwear

#endif // NVWEAR_WEAR_POLICY_HPP
