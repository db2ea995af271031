#ifndef NVWEAR_REFERENCE_REFERENCE_PLANNER_HPP
#define NVWEAR_REFERENCE_REFERENCE_PLANNER_HPP

#include <cstdint>
#include <vector>

#include "nvwear/wear_policy.hpp"

namespace nvwear::reference {

/// Two-pass population standard deviation in long double.
long double naiveStddev(const std::vector<std::uint64_t> &values);

/// Straight-line transcription of the remap algorithm with its own sorting
/// (insertion / selection sort) and statistics. Independent of planRemap().
RemapDecision straightLinePlan(const std::vector<std::uint64_t> &lastInterval,
                               const std::vector<std::uint64_t> &global, double beta,
                               unsigned lambda, SwapLimitMode mode);

} // namespace nvwear::reference

#endif
