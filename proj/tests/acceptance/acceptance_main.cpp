// Acceptance suite: one line per criterion, non-zero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "nvwear/cache.hpp"
#include "nvwear/color_map.hpp"
#include "nvwear/experiment.hpp"
#include "nvwear/metrics.hpp"
#include "nvwear/reference/differential.hpp"
#include "nvwear/report.hpp"
#include "nvwear/wear_policy.hpp"

using namespace nvwear;

namespace {

struct Outcome
{
    bool pass = false;
    std::string detail;
};

std::string
fmt(const char *f, double a = 0, double b = 0, double c = 0, double d = 0)
{
    char buf[256];
    std::snprintf(buf, sizeof(buf), f, a, b, c, d);
    return buf;
}

/// 16 colors x 64 sets x 4 ways (256KiB), paper timing and thresholds.
ExperimentConfig
deskConfig(PolicyKind policy, const GeneratorSpec &g, std::uint64_t k)
{
    ExperimentConfig cfg;
    cfg.sim.cache.cacheSizeBytes = 256 * 1024;
    cfg.sim.cache.associativity = 4;
    cfg.sim.policy = policy;
    cfg.sim.params.kWrites = k;
    cfg.workload.generator = g;
    cfg.output.dir = "unused";
    return cfg;
}

Outcome
oracleEquivalence()
{
    reference::CacheDiffOptions opt;
    opt.colors = 4;
    opt.setsPerColor = 4;
    opt.ways = 2;
    opt.traces = 1000;
    opt.maxEvents = 10'000;
    opt.seed = 2024;
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = reference::diffCacheModels(opt);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    Outcome o;
    o.pass = r.cases >= 1000 && r.mismatches == 0 && secs < 60.0;
    o.detail = std::to_string(r.cases) + " traces, " + std::to_string(r.steps) + " steps, " +
               std::to_string(r.mismatches) + " mismatches, " + fmt("%.1fs", secs);
    if (!r.firstMismatch.empty())
        o.detail += "; first: " + r.firstMismatch;
    return o;
}

Outcome
algorithmStepOracle()
{
    reference::PlanDiffOptions opt;
    opt.vectors = 10'000;
    opt.seed = 77;
    const auto r = reference::diffPlanners(opt);
    Outcome o;
    // Each vector is checked in both swap-limit modes.
    o.pass = r.cases >= 20'000 && r.mismatches == 0;
    o.detail = std::to_string(r.cases) + " decisions (min+max), " +
               std::to_string(r.mismatches) + " mismatches";
    if (!r.firstMismatch.empty())
        o.detail += "; first: " + r.firstMismatch;
    return o;
}

Outcome
colorCount()
{
    CacheConfig c;
    c.cacheSizeBytes = 4u << 20;
    c.pageSizeBytes = 4096;
    c.associativity = 16;
    c.blockSizeBytes = 64;
    const auto g = CacheGeometry::from(c);
    Outcome o;
    o.pass = computeNumColors(c) == 64 && g.numColors == 64 && g.numSets == 4096;
    o.detail = std::to_string(g.numColors) + " colors, " + std::to_string(g.numSets) + " sets";
    return o;
}

Outcome
uniformNoop()
{
    GeneratorSpec g;
    g.kind = GeneratorKind::RoundRobin;
    g.numEvents = 1'000'000;
    g.pageCount = 2048; // 8MiB footprint over the 4MiB cache
    g.writeFraction = 0.5;
    g.seed = 3;
    ExperimentConfig cfg;
    cfg.sim.policy = PolicyKind::Swl;
    cfg.sim.params.kWrites = 10'000;
    cfg.workload.generator = g;
    const auto report = runExperiment(cfg);
    const auto &swl = report.techniques.at(0).result.stats;
    const auto rel = relativeLifetime(report.baseline.result.stats, swl);
    Outcome o;
    o.pass = swl.swaps == 0 && rel && std::fabs(*rel - 1.0) <= 0.01;
    o.detail = "swaps=" + std::to_string(swl.swaps) + " algorithmRuns=" +
               std::to_string(swl.algorithmRuns) +
               (rel ? fmt(" relLifetime=%.4f", *rel) : std::string(" relLifetime=undefined"));
    return o;
}

Outcome
skewBenefit()
{
    GeneratorSpec g;
    g.kind = GeneratorKind::Hotset;
    g.numEvents = 1'000'000;
    g.pageCount = 16; // one page per region; page 0 is the hot one
    g.hotsetFraction = 1.0 / 16.0;
    g.hotsetProbability = 0.9;
    g.writeFraction = 1.0;
    g.seed = 5;
    const auto t0 = std::chrono::steady_clock::now();
    const auto report = runExperiment(deskConfig(PolicyKind::Swl, g, 10'000));
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const auto &base = report.baseline.result.stats;
    const auto &swl = report.techniques.at(0).result.stats;
    const auto rel = relativeLifetime(base, swl);
    Outcome o;
    o.pass = rel && *rel >= 1.5 && swl.maxBlockWrites < base.maxBlockWrites && secs < 60.0;
    o.detail = "maxBlockWrites static=" + std::to_string(base.maxBlockWrites) +
               " swl=" + std::to_string(swl.maxBlockWrites) +
               (rel ? fmt(" relLifetime=%.3f", *rel) : std::string(" relLifetime=undefined")) +
               " remapRuns=" + std::to_string(swl.remapRuns) + fmt(" (%.1fs)", secs);
    return o;
}

Outcome
skewTrend()
{
    std::vector<double> sd, rel;
    for (double s : {0.0, 1.0, 2.0}) {
        GeneratorSpec g;
        g.kind = GeneratorKind::Zipf;
        // Long enough for the 3M-cycle gap to allow dozens of algorithm runs.
        g.numEvents = 3'000'000;
        g.pageCount = 256;
        g.zipfExponent = s;
        g.writeFraction = 0.5;
        g.seed = 11;
        const auto report = runExperiment(deskConfig(PolicyKind::Swl, g, 10'000));
        sd.push_back(report.baseline.result.stats.perBlockWriteSD);
        const auto r = relativeLifetime(report.baseline.result.stats,
                                        report.techniques.at(0).result.stats);
        rel.push_back(r.value_or(0.0));
    }
    Outcome o;
    o.pass = sd[0] < sd[1] && sd[1] < sd[2] && rel[0] <= rel[1] && rel[1] <= rel[2];
    o.detail = fmt("static SD s=0,1,2: %.2f %.2f %.2f", sd[0], sd[1], sd[2]) +
               fmt("; SWL relLifetime: %.3f %.3f %.3f", rel[0], rel[1], rel[2]);
    return o;
}

Outcome
bijectivityFuzz()
{
    CacheConfig cfg;
    cfg.cacheSizeBytes = 64 * 256 * 2;
    cfg.pageSizeBytes = 256;
    cfg.associativity = 2;
    Cache cache(cfg);
    const std::uint32_t n = cache.geometry().numColors;
    MappingTable map(n);
    std::mt19937_64 rng(9);
    std::uint64_t ops = 0;
    bool ok = true;
    for (; ops < 100'000; ++ops) {
        switch (rng() % 3) {
          case 0:
            map.swapColors(rng() % n, rng() % n);
            break;
          case 1: {
            std::vector<SwapPair> swaps;
            for (int k = rng() % 4; k >= 0; --k)
                swaps.emplace_back(rng() % n, rng() % n);
            applyRemap(map, cache, swaps);
            break;
          }
          default:
            map.assign(xorMapping(static_cast<std::uint32_t>(rng() % n), n));
            break;
        }
    }
    std::vector<Color> sorted(map.colors().begin(), map.colors().end());
    std::ranges::sort(sorted);
    for (std::uint32_t i = 0; i < n; ++i) {
        ok = ok && sorted[i] == i && map.regionOf(map.colorOf(i)) == i &&
             map.colorOf(map.regionOf(i)) == i;
    }
    Outcome o;
    o.pass = ok;
    o.detail = std::to_string(ops) + " operations over " + std::to_string(n) + " colors";
    return o;
}

Outcome
energySpotValues()
{
    const EnergyConstants c;
    RunStats idle;
    idle.cycles = 2'000'000'000; // one second at 2GHz
    const double e0 = energy(idle, c, 2e9);
    bool ok = std::fabs(e0 - 2.415) <= 2.415 * 1e-9;
    double worst = 0.0;
    for (auto member : {&RunStats::misses, &RunStats::writebacks, &RunStats::flushWritebacks}) {
        RunStats s = idle;
        s.*member += 1;
        const double delta = energy(s, c, 2e9) - e0;
        worst = std::max(worst, std::fabs(delta - 70e-9) / 70e-9);
    }
    ok = ok && worst <= 1e-9;
    // Same increment without the leakage term in the sum.
    RunStats noTime;
    const double base = energy(noTime, c, 2e9);
    for (auto member : {&RunStats::misses, &RunStats::writebacks, &RunStats::flushWritebacks}) {
        RunStats s = noTime;
        s.*member += 1;
        ok = ok && std::fabs((energy(s, c, 2e9) - base) - 70e-9) <= 70e-9 * 1e-9;
    }
    Outcome o;
    o.pass = ok;
    o.detail = fmt("idle 1s = %.12f J; +1 memory access = 70 nJ (on 1s base rel err %.1e)", e0,
                   worst);
    return o;
}

Outcome
triggerSemantics()
{
    PolicyParams p;
    p.kWrites = 1000;
    p.lambda = 1;
    bool ok = true;

    PolicyState a(4, p);
    for (int i = 0; i < 1000; ++i)
        a.observeWrite(0);
    ok = ok && a.checkTrigger(4'000'000) && !a.deferred() && a.writesSinceCheck() == 0;

    PolicyState b(4, p);
    for (int i = 0; i < 1000; ++i)
        b.observeWrite(0);
    ok = ok && !b.checkTrigger(1'000'000) && b.deferred() && b.writesSinceCheck() == 0;
    for (int i = 0; i < 999; ++i) {
        b.observeWrite(1);
        ok = ok && !b.checkTrigger(3'500'000);
    }
    b.observeWrite(1);
    ok = ok && b.checkTrigger(3'500'000) && !b.deferred();

    Outcome o;
    o.pass = ok;
    o.detail = "K with gap 4M fires; K with gap 1M defers and resets; next K after gap fires";
    return o;
}

Outcome
determinism()
{
    GeneratorSpec g;
    g.kind = GeneratorKind::Zipf;
    g.numEvents = 200'000;
    g.pageCount = 128;
    g.zipfExponent = 1.2;
    g.seed = 42;
    bool ok = true;
    for (auto policy : {PolicyKind::Static, PolicyKind::Swl, PolicyKind::Xor}) {
        const auto cfg = deskConfig(policy, g, 5'000);
        const auto a = runExperiment(cfg);
        const auto b = runExperiment(cfg);
        ok = ok && reportCsv(a) == reportCsv(b) && intervalCsv(a) == intervalCsv(b) &&
             mappingCsv(a) == mappingCsv(b) && plotCsv(a) == plotCsv(b);
    }
    Outcome o;
    o.pass = ok;
    o.detail = "report/interval/mapping/plot CSV bodies identical across repeated runs";
    return o;
}

} // namespace

int
main()
{
    struct Criterion
    {
        const char *name;
        std::function<Outcome()> check;
    };
    const Criterion criteria[] = {
        {"oracle equivalence (1000 traces, 4 colors x 4 sets x 2 ways)", oracleEquivalence},
        {"remap planner vs straight-line oracle (10^4 vectors, both modes)", algorithmStepOracle},
        {"color count for 4MiB/4KiB/16-way", colorCount},
        {"uniform roundrobin: no swaps, relLifetime 1.0 +/- 0.01", uniformNoop},
        {"hotset skew: relLifetime >= 1.5 and lower max block writes", skewBenefit},
        {"zipf s=0,1,2: static SD increasing, SWL relLifetime non-decreasing", skewTrend},
        {"mapping bijectivity after 10^5 operations", bijectivityFuzz},
        {"energy spot values (2.415 J idle second, 70 nJ per access)", energySpotValues},
        {"trigger semantics (K writes, 3M-cycle gap, deferral)", triggerSemantics},
        {"determinism of CSV report bodies", determinism},
    };

    int failed = 0;
    int index = 0;
    for (const auto &c : criteria) {
        ++index;
        Outcome o;
        try {
            o = c.check();
        } catch (const std::exception &e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        failed += !o.pass;
        std::printf("[%s] %2d %s -- %s\n", o.pass ? "PASS" : "FAIL", index, c.name,
                    o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%d criteria passed\n", index - failed, index);
    return failed == 0 ? 0 : 1;
}
