#include "nvwear/reference/reference_planner.hpp"

#include <cmath>

namespace nvwear::reference {

long double
naiveStddev(const std::vector<std::uint64_t> &values)
{
    if (values.empty())
        return 0.0L;
    long double mean = 0.0L;
    for (auto v : values)
        mean += static_cast<long double>(v);
    mean /= static_cast<long double>(values.size());
    long double sq = 0.0L;
    for (auto v : values) {
        const long double d = static_cast<long double>(v) - mean;
        sq += d * d;
    }
    return std::sqrt(sq / static_cast<long double>(values.size()));
}

RemapDecision
straightLinePlan(const std::vector<std::uint64_t> &lastInterval,
                 const std::vector<std::uint64_t> &global, double beta, unsigned lambda,
                 SwapLimitMode mode)
{
    const unsigned n = static_cast<unsigned>(lastInterval.size());
    RemapDecision d;

    long double sum = 0.0L;
    for (auto v : lastInterval)
        sum += static_cast<long double>(v);
    const long double avg = n ? sum / n : 0.0L;
    const long double sdw = naiveStddev(lastInterval);
    d.sdw = static_cast<double>(sdw);
    d.average = static_cast<double>(avg);

    // Step 1: small variation, nothing to do.
    if (n == 0 || sdw < static_cast<long double>(beta))
        return d;
    d.ran = true;

    // Step 2, L1: insertion sort, decreasing interval writes, lower index first on ties.
    std::vector<unsigned> l1;
    for (unsigned c = 0; c < n; ++c) {
        auto pos = l1.begin();
        while (pos != l1.end() && lastInterval[*pos] >= lastInterval[c])
            ++pos;
        l1.insert(pos, c);
    }

    // Step 2, L2: selection sort, increasing global writes, lower index first on ties.
    std::vector<unsigned> l2;
    std::vector<bool> taken(n, false);
    for (unsigned k = 0; k < n; ++k) {
        int best = -1;
        for (unsigned c = 0; c < n; ++c) {
            if (taken[c])
                continue;
            if (best < 0 || global[c] < global[static_cast<unsigned>(best)])
                best = static_cast<int>(c);
        }
        taken[static_cast<unsigned>(best)] = true;
        l2.push_back(static_cast<unsigned>(best));
    }

    // Step 3.
    unsigned nHigher = 0;
    for (auto v : lastInterval) {
        if (static_cast<long double>(v) > avg)
            ++nHigher;
    }
    unsigned count = 0;
    if (mode == SwapLimitMode::Max)
        count = nHigher > lambda ? nHigher : lambda;
    else
        count = nHigher < lambda ? nHigher : lambda;
    if (count > n / 2)
        count = n / 2;
    d.nHigher = nHigher;
    d.nColorToSwap = count;

    // Step 4.
    for (unsigned k = 0; k < count; ++k)
        d.swaps.push_back({l1[k], l2[k]});
    return d;
}

} // namespace nvwear::reference
