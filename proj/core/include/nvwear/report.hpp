#ifndef NVWEAR_REPORT_HPP
#define NVWEAR_REPORT_HPP

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "nvwear/experiment.hpp"

namespace nvwear {

/// Header of report.csv; column order is part of the output contract.
inline constexpr std::string_view kReportColumns =
    "policy,seed,workload,maxBlockWrites,relLifetime,cycles,relPerf,energyJ,"
    "energyDeltaPct,mpki,mpkiDelta,remapRuns,flushWritebacks,blockWriteSD";

inline constexpr std::string_view kIntervalColumns =
    "policy,intervalIndex,cycle,SDW,nHigher,nColorToSwap,swaps,writebacks";

inline constexpr std::string_view kMappingColumns = "policy,interval,region,color";

inline constexpr std::string_view kPlotColumns = "metric,policy,workload,value";

std::string reportCsv(const ExperimentReport &report);
/// Per-interval decision log of every run in the report.
std::string intervalCsv(const ExperimentReport &report);
std::string mappingCsv(const ExperimentReport &report);
/// Tidy long-form data: one (metric, policy, workload, value) per line.
std::string plotCsv(const ExperimentReport &report);
/// Human-readable summary. Only the first line carries a timestamp.
std::string summaryMarkdown(const ExperimentReport &report, std::string_view timestamp);

/// Write `content` to `path` through a temporary file and rename.
void writeFileAtomic(const std::filesystem::path &path, std::string_view content);

/// Writes the files selected in `out` and returns their paths.
std::vector<std::filesystem::path> writeReport(const ExperimentReport &report,
                                               const OutputConfig &out,
                                               std::string_view timestamp);

} // namespace nvwear

#endif // NVWEAR_REPORT_HPP
