// nvwear: command-line front end for the LLC wear-leveling simulator.

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <exception>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "nvwear/errors.hpp"
#include "nvwear/experiment.hpp"
#include "nvwear/reference/differential.hpp"
#include "nvwear/report.hpp"
#include "nvwear/workload.hpp"

namespace {

using namespace nvwear;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

// Raw flag values; parsed after CLI11 so errors carry our messages.
struct CommonFlags
{
    std::string config;
    std::optional<std::string> policy;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<std::string> trace;
    std::optional<std::uint64_t> k;
    std::optional<double> beta;
    std::optional<std::uint32_t> lambda;
    std::optional<std::string> swapLimitMode;
    std::optional<std::string> countFills;
};

void addCommonFlags(CLI::App &cmd, CommonFlags &f)
{
    cmd.add_option("--config", f.config, "Experiment file (INI)")->check(CLI::ExistingFile);
    cmd.add_option("--policy", f.policy, "swl, static or xor");
    cmd.add_option("--seed", f.seed, "Generator seed");
    cmd.add_option("--out", f.out, "Output directory (trace file for gen-trace)");
    cmd.add_option("--trace", f.trace, "Replay this trace instead of the generator");
    cmd.add_option("--k", f.k, "Block writes between wear-leveling runs");
    cmd.add_option("--beta", f.beta, "SDW threshold");
    cmd.add_option("--lambda", f.lambda, "Swap limit");
    cmd.add_option("--swap-limit-mode", f.swapLimitMode, "min or max");
    cmd.add_option("--count-fills", f.countFills, "on or off");
}

ConfigOverrides toOverrides(const CommonFlags &f)
{
    ConfigOverrides o;
    if (f.policy) o.policy = parsePolicyKind(*f.policy);
    o.seed = f.seed;
    if (f.out) o.outDir = *f.out;
    if (f.trace) o.tracePath = *f.trace;
    o.kWrites = f.k;
    o.beta = f.beta;
    o.lambda = f.lambda;
    if (f.swapLimitMode) o.swapLimitMode = parseSwapLimitMode(*f.swapLimitMode);
    if (f.countFills) o.countFills = parseOnOff(*f.countFills);
    return o;
}

ExperimentConfig buildConfig(const std::string &path, const ConfigOverrides &o)
{
    ExperimentConfig cfg = path.empty() ? ExperimentConfig{} : loadConfig(path);
    applyOverrides(cfg, o);
    cfg.validate();
    return cfg;
}

std::string utcTimestamp()
{
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

void describe(const ExperimentConfig &cfg)
{
    const auto geom = CacheGeometry::from(cfg.sim.cache);
    spdlog::info("cache {} B, {}-way, {} sets, {} colors", cfg.sim.cache.cacheSizeBytes,
                 geom.associativity, geom.numSets, geom.numColors);
    spdlog::info("workload {} (seed {})", cfg.workload.label(), cfg.workload.seed());
}

int emit(const ExperimentReport &report, const OutputConfig &out)
{
    for (const auto &row : report.rows())
        spdlog::info("{}: maxBlockWrites={} remapRuns={} flushWritebacks={}", row.policy,
                     row.maxBlockWrites, row.remapRuns, row.flushWritebacks);
    const auto files = writeReport(report, out, utcTimestamp());
    if (files.empty()) {
        spdlog::error("all output formats are disabled; no report written");
        return kExitFailure;
    }
    for (const auto &p : files)
        spdlog::info("wrote {}", p.string());
    return kExitOk;
}

int cmdRun(const CommonFlags &flags)
{
    const auto cfg = buildConfig(flags.config, toOverrides(flags));
    describe(cfg);
    spdlog::info("running {} with static baseline", toString(cfg.sim.policy));
    return emit(runExperiment(cfg), cfg.output);
}

int cmdCompare(const CommonFlags &flags, const std::string &baselineConfig,
               const std::string &baselinePolicy, std::optional<std::uint64_t> baselineSeed)
{
    const auto techOverrides = toOverrides(flags);
    const auto technique = buildConfig(flags.config, techOverrides);

    // The baseline inherits every flag except the policy and, optionally, the seed.
    auto baseOverrides = techOverrides;
    baseOverrides.policy = parsePolicyKind(baselinePolicy);
    if (baselineSeed)
        baseOverrides.seed = baselineSeed;
    const auto baseline =
        buildConfig(baselineConfig.empty() ? flags.config : baselineConfig, baseOverrides);

    describe(technique);
    spdlog::info("comparing {} against {}", toString(technique.sim.policy),
                 toString(baseline.sim.policy));
    return emit(compareExperiments(baseline, technique), technique.output);
}

int cmdGenTrace(const CommonFlags &flags)
{
    if (!flags.out)
        throw ConfigError("gen-trace needs --out <file>");
    if (flags.trace)
        throw ConfigError("gen-trace does not take --trace");
    auto o = toOverrides(flags);
    o.outDir.reset();
    const auto cfg = buildConfig(flags.config, o);
    if (!cfg.workload.generator)
        throw ConfigError("gen-trace needs a [workload] generator, not a trace");
    const auto events = generate(*cfg.workload.generator);
    writeTrace(std::filesystem::path(*flags.out), events);
    spdlog::info("wrote {} events to {}", events.size(), *flags.out);
    return kExitOk;
}

int cmdSelftest(std::uint64_t traces, std::uint64_t vectors, std::uint64_t seed)
{
    bool ok = true;
    auto report = [&](const char *name, const reference::DifferentialSummary &s) {
        std::cout << (s.passed() ? "[PASS] " : "[FAIL] ") << name << ": " << s.cases
                  << " cases, " << s.steps << " steps, " << s.mismatches << " mismatches\n";
        if (!s.firstMismatch.empty())
            std::cout << "       first mismatch: " << s.firstMismatch << '\n';
        ok = ok && s.passed();
    };

    for (bool countFills : {true, false}) {
        reference::CacheDiffOptions opt;
        opt.traces = traces;
        opt.countFills = countFills;
        opt.seed = seed;
        report(countFills ? "cache vs reference (fills counted)"
                          : "cache vs reference (fills not counted)",
               reference::diffCacheModels(opt));
    }
    reference::PlanDiffOptions plan;
    plan.vectors = vectors;
    plan.seed = seed;
    report("planner vs reference", reference::diffPlanners(plan));
    return ok ? kExitOk : kExitFailure;
}

void setupLogging()
{
    auto logger = spdlog::stderr_color_mt("nvwear");
    logger->set_pattern("[%l] %v");
    spdlog::set_default_logger(logger);
    spdlog::set_level(spdlog::level::warn);
    if (const char *env = std::getenv("NVWEAR_LOG"); env && *env) {
        const auto level = spdlog::level::from_str(env);
        // from_str maps anything unknown to "off"; only honour that when asked.
        if (level != spdlog::level::off || std::string(env) == "off")
            spdlog::set_level(level);
        else
            spdlog::warn("ignoring unknown NVWEAR_LOG level '{}'", env);
    }
}

} // namespace

int main(int argc, char **argv)
{
    setupLogging();

    CLI::App app{"STT-RAM last-level cache wear-leveling simulator"};
    app.require_subcommand(1);

    CommonFlags runFlags, cmpFlags, genFlags;
    auto *run = app.add_subcommand("run", "Simulate one policy next to the static baseline");
    addCommonFlags(*run, runFlags);

    auto *cmp = app.add_subcommand("compare", "Compare a technique against a baseline");
    addCommonFlags(*cmp, cmpFlags);
    std::string baselineConfig;
    std::string baselinePolicy = "static";
    std::optional<std::uint64_t> baselineSeed;
    cmp->add_option("--baseline-config", baselineConfig, "Baseline experiment file")
        ->check(CLI::ExistingFile);
    cmp->add_option("--baseline-policy", baselinePolicy, "Baseline policy")->capture_default_str();
    cmp->add_option("--baseline-seed", baselineSeed, "Baseline generator seed");

    auto *gen = app.add_subcommand("gen-trace", "Write the configured synthetic workload as a trace");
    addCommonFlags(*gen, genFlags);

    auto *self = app.add_subcommand("selftest", "Differential check against the naive models");
    std::uint64_t traces = 1000, vectors = 10'000, selfSeed = 1;
    self->add_option("--traces", traces, "Random cache traces")->capture_default_str();
    self->add_option("--vectors", vectors, "Random planner inputs")->capture_default_str();
    self->add_option("--seed", selfSeed, "Seed")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*run) return cmdRun(runFlags);
        if (*cmp) return cmdCompare(cmpFlags, baselineConfig, baselinePolicy, baselineSeed);
        if (*gen) return cmdGenTrace(genFlags);
        if (*self) return cmdSelftest(traces, vectors, selfSeed);
    } catch (const ConfigError &e) {
        spdlog::error("config: {}", e.what());
        return kExitUsage;
    } catch (const ParseError &e) {
        spdlog::error("trace line {}: {}", e.line(), e.reason());
        return kExitFailure;
    } catch (const std::exception &e) {
        spdlog::error("{}", e.what());
        return kExitFailure;
    }
    return kExitUsage;
}
