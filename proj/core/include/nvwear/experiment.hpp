#ifndef NVWEAR_EXPERIMENT_HPP
#define NVWEAR_EXPERIMENT_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "nvwear/simulator.hpp"
#include "nvwear/workload.hpp"

namespace nvwear {

/// Either a synthetic generator or a trace file.
struct WorkloadSource
{
    std::optional<GeneratorSpec> generator = GeneratorSpec{};
    std::filesystem::path tracePath;
    /// Report label; derived from the generator or trace file when empty.
    std::string name;

    std::string label() const;
    std::uint64_t seed() const { return generator ? generator->seed : 0; }
};

struct OutputConfig
{
    std::filesystem::path dir = "nvwear-out";
    bool csv = true;
    bool markdown = true;
    bool plotData = true;
};

struct ExperimentConfig
{
    SimulationConfig sim;
    WorkloadSource workload;
    OutputConfig output;

    /// Checks every numeric range and that a referenced trace exists.
    /// Copies the cache page/block sizes into the generator spec.
    void validate();
};

/// Command-line overrides; unset members leave the file value alone.
struct ConfigOverrides
{
    std::optional<PolicyKind> policy;
    std::optional<std::uint64_t> seed;
    std::optional<std::filesystem::path> outDir;
    std::optional<std::filesystem::path> tracePath;
    std::optional<std::uint64_t> kWrites;
    std::optional<double> beta;
    std::optional<std::uint32_t> lambda;
    std::optional<SwapLimitMode> swapLimitMode;
    std::optional<bool> countFills;
};

/**
 * Parse an INI-style experiment file with [cache], [policy], [workload],
 * [energy] and [output] sections. Unknown sections or keys are errors.
 * Sizes accept KiB/MiB/GiB suffixes.
 */
ExperimentConfig loadConfig(const std::filesystem::path &path);
ExperimentConfig parseConfig(const std::string &text);
void applyOverrides(ExperimentConfig &cfg, const ConfigOverrides &o);

/// Byte size with an optional KiB/MiB/GiB (or K/M/G) suffix.
std::uint64_t parseSize(const std::string &text);
bool parseOnOff(const std::string &text);

struct PolicyRun
{
    PolicyKind policy = PolicyKind::Static;
    SimulationResult result;
};

struct ReportRow
{
    std::string policy;
    std::uint64_t seed = 0;
    std::string workload;
    std::uint64_t maxBlockWrites = 0;
    std::optional<double> relLifetime;
    Cycles cycles = 0;
    std::optional<double> relPerf;
    double energyJ = 0.0;
    double energyDeltaPct = 0.0;
    std::optional<double> mpki;
    std::optional<double> mpkiDelta;
    std::uint64_t remapRuns = 0;
    std::uint64_t flushWritebacks = 0;
    double blockWriteSD = 0.0;
};

/// The baseline run plus zero or more technique runs over one workload.
struct ExperimentReport
{
    std::string workload;
    std::uint64_t seed = 0;
    PolicyRun baseline;
    std::vector<PolicyRun> techniques;

    std::vector<ReportRow> rows() const;
};

ReportRow makeRow(const PolicyRun &run, const PolicyRun &baseline,
                  const std::string &workload, std::uint64_t seed);

/// Run one policy over the workload. The static policy always runs too, as
/// the baseline that relative metrics are taken against.
ExperimentReport runExperiment(const ExperimentConfig &cfg);

/// Baseline vs technique. Throws ConfigError unless both configs share the
/// same workload and cache geometry. The two simulations run concurrently.
ExperimentReport compareExperiments(const ExperimentConfig &baseline,
                                    const ExperimentConfig &technique);

/// Simulate one policy on the configured workload.
SimulationResult simulateWorkload(const SimulationConfig &sim, const WorkloadSource &w);

} // namespace nvwear

#endif // NVWEAR_EXPERIMENT_HPP
