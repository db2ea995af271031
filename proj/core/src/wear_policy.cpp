#include "nvwear/wear_policy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "nvwear/errors.hpp"

namespace nvwear {

namespace {
__extension__ typedef unsigned __int128 Wide;
} // namespace

std::string_view
toString(PolicyKind k)
{
    switch (k) {
      case PolicyKind::Static: return "static";
      case PolicyKind::Swl: return "swl";
      case PolicyKind::Xor: return "xor";
    }
    return "?";
}

std::string_view
toString(SwapLimitMode m)
{
    return m == SwapLimitMode::Min ? "min" : "max";
}

PolicyKind
parsePolicyKind(std::string_view s)
{
    if (s == "static") return PolicyKind::Static;
    if (s == "swl") return PolicyKind::Swl;
    if (s == "xor") return PolicyKind::Xor;
    throw ConfigError("unknown policy '" + std::string(s) + "' (expected swl|static|xor)");
}

SwapLimitMode
parseSwapLimitMode(std::string_view s)
{
    if (s == "min") return SwapLimitMode::Min;
    if (s == "max") return SwapLimitMode::Max;
    throw ConfigError("unknown swap limit mode '" + std::string(s) + "' (expected min|max)");
}

std::uint32_t
PolicyParams::lambdaFor(std::uint32_t numColors) const
{
    return lambda.value_or(std::max<std::uint32_t>(1, numColors / 4));
}

void
PolicyParams::validate(std::uint32_t numColors) const
{
    if (!(beta >= 0.0) || !std::isfinite(beta))
        throw ConfigError("beta must be a finite value >= 0");
    if (kWrites == 0)
        throw ConfigError("K (writes per interval) must be positive");
    const std::uint32_t l = lambdaFor(numColors);
    const std::uint32_t upper = std::max<std::uint32_t>(1, numColors / 2);
    if (l < 1 || l > upper)
        throw ConfigError("lambda must be in [1, " + std::to_string(upper) + "], got " +
                          std::to_string(l));
}

double
stddevWrites(std::span<const std::uint64_t> values)
{
    if (values.size() < 2)
        return 0.0;
    // N * sum(x^2) - sum(x)^2 is exact in 128-bit arithmetic.
    Wide sum = 0, sumSq = 0;
    for (std::uint64_t v : values) {
        sum += v;
        sumSq += static_cast<Wide>(v) * v;
    }
    const auto n = static_cast<Wide>(values.size());
    const Wide num = n * sumSq - sum * sum;
    const double nd = static_cast<double>(values.size());
    return std::sqrt(static_cast<long double>(num)) / nd;
}

RemapDecision
planRemap(std::span<const std::uint64_t> lastInterval,
          std::span<const std::uint64_t> global, double beta, std::uint32_t lambda,
          SwapLimitMode mode)
{
    if (lastInterval.size() != global.size())
        throw ConfigError("planRemap: counter vectors differ in length");
    const auto n = static_cast<std::uint32_t>(lastInterval.size());

    RemapDecision d;
    d.sdw = stddevWrites(lastInterval);
    const std::uint64_t total =
        std::accumulate(lastInterval.begin(), lastInterval.end(), std::uint64_t{0});
    d.average = n == 0 ? 0.0 : static_cast<double>(total) / n;
    if (n == 0 || d.sdw < beta)
        return d;

    d.ran = true;
    for (std::uint64_t v : lastInterval) {
        // v > total / n without rounding.
        if (static_cast<Wide>(v) * n > total)
            ++d.nHigher;
    }

    std::vector<Color> hot(n), cold(n);
    std::iota(hot.begin(), hot.end(), Color{0});
    std::iota(cold.begin(), cold.end(), Color{0});
    std::ranges::stable_sort(hot, [&](Color a, Color b) {
        return lastInterval[a] > lastInterval[b];
    });
    std::ranges::stable_sort(cold, [&](Color a, Color b) {
        return global[a] < global[b];
    });

    const std::uint32_t combined = mode == SwapLimitMode::Min
                                       ? std::min(d.nHigher, lambda)
                                       : std::max(d.nHigher, lambda);
    d.nColorToSwap = std::min(combined, n / 2);
    d.swaps.reserve(d.nColorToSwap);
    for (std::uint32_t k = 0; k < d.nColorToSwap; ++k)
        d.swaps.emplace_back(hot[k], cold[k]);
    return d;
}

PolicyState::PolicyState(std::uint32_t numColors, const PolicyParams &params)
    : global_(numColors, 0), lastInterval_(numColors, 0), beta_(params.beta),
      lambda_(params.lambdaFor(numColors)), kWrites_(params.kWrites),
      minGap_(params.minGapCycles), mode_(params.swapLimitMode)
{
    params.validate(numColors);
}

void
PolicyState::observeWrite(Color color)
{
    ++global_[color];
    ++lastInterval_[color];
    ++writesSinceCheck_;
}

bool
PolicyState::checkTrigger(Cycles nowCycle)
{
    if (writesSinceCheck_ < kWrites_)
        return false;
    writesSinceCheck_ = 0;
    if (nowCycle - lastRunCycle_ < minGap_) {
        deferred_ = true;
        return false;
    }
    deferred_ = false;
    lastRunCycle_ = nowCycle;
    return true;
}

RemapDecision
PolicyState::planRemap()
{
    RemapDecision d = nvwear::planRemap(lastInterval_, global_, beta_, lambda_, mode_);
    resetInterval();
    return d;
}

void
PolicyState::resetInterval()
{
    std::ranges::fill(lastInterval_, 0);
}

std::uint32_t
xorRegisterFor(std::uint64_t intervalIndex, std::uint32_t numColors)
{
    if (numColors <= 1)
        return 0;
    // Cycles through 1..N-1 so consecutive intervals always differ.
    const std::uint64_t i = intervalIndex == 0 ? 0 : intervalIndex - 1;
    return 1 + static_cast<std::uint32_t>(i % (numColors - 1));
}

std::vector<Color>
xorMapping(std::uint32_t reg, std::uint32_t numColors)
{
    if (!isPowerOfTwo(numColors))
        throw ConfigError("XOR remapping needs a power-of-two color count");
    if (reg >= numColors)
        throw ConfigError("XOR register out of range");
    std::vector<Color> m(numColors);
    for (Region r = 0; r < numColors; ++r)
        m[r] = r ^ reg;
    return m;
}

} // namespace nvwear
