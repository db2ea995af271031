#include "nvwear/reference/differential.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "nvwear/cache.hpp"
#include "nvwear/reference/reference_cache.hpp"
#include "nvwear/reference/reference_planner.hpp"

namespace nvwear::reference {

namespace {

void
noteMismatch(DifferentialSummary &s, const std::string &what)
{
    if (s.mismatches++ == 0)
        s.firstMismatch = what;
}

} // namespace

DifferentialSummary
diffCacheModels(const CacheDiffOptions &opt)
{
    DifferentialSummary summary;
    std::mt19937_64 rng(opt.seed);
    constexpr unsigned kBlock = 64;

    CacheConfig cfg;
    cfg.blockSizeBytes = kBlock;
    cfg.pageSizeBytes = kBlock * opt.setsPerColor;
    cfg.associativity = opt.ways;
    cfg.cacheSizeBytes = std::uint64_t{opt.colors} * cfg.pageSizeBytes * opt.ways;
    cfg.countFills = opt.countFills;

    for (std::uint64_t t = 0; t < opt.traces; ++t) {
        ++summary.cases;
        Cache cache(cfg);
        MappingTable map(cache.geometry().numColors);
        ReferenceCache ref(opt.colors, opt.setsPerColor, opt.ways, kBlock, opt.countFills);

        std::uniform_int_distribution<std::uint64_t> lenDist(1, opt.maxEvents);
        // Few distinct pages per trace so sets see real conflicts.
        std::uniform_int_distribution<std::uint64_t> pageDist(
            0, std::uint64_t{opt.colors} * (opt.ways + 1 + t % 4) - 1);
        std::uniform_int_distribution<std::uint64_t> offsetDist(0, cfg.pageSizeBytes - 1);
        std::uniform_int_distribution<unsigned> colorDist(0, opt.colors - 1);
        std::bernoulli_distribution swapDist(opt.swapProbability);
        std::bernoulli_distribution writeDist(0.2 + 0.6 * static_cast<double>(t % 5) / 4.0);

        const std::uint64_t len = lenDist(rng);
        std::uint64_t optimizedFlushWb = 0;
        std::uint64_t optimizedEvictWb = 0;
        bool diverged = false;
        for (std::uint64_t i = 0; i < len && !diverged; ++i) {
            ++summary.steps;
            if (swapDist(rng)) {
                const unsigned c1 = colorDist(rng), c2 = colorDist(rng);
                const SwapPair pair{c1, c2};
                optimizedFlushWb += applyRemap(map, cache, std::span(&pair, 1));
                ref.swapAndFlush(c1, c2);
                continue;
            }
            const std::uint64_t addr = pageDist(rng) * cfg.pageSizeBytes + offsetDist(rng);
            const bool isWrite = writeDist(rng);
            const auto d = decomposeAddress(addr, cache.geometry(), map);
            const auto out =
                cache.access(d.setIndex, d.tag, isWrite ? AccessKind::Write : AccessKind::Read);
            const auto expect = ref.access(addr, isWrite);
            if (out.evictedDirty)
                ++optimizedEvictWb;
            if (out.hit != expect.hit || out.evictedDirty != expect.evictedDirty) {
                std::ostringstream os;
                os << "trace " << t << " step " << i << " addr 0x" << std::hex << addr
                   << std::dec << ": hit " << out.hit << "/" << expect.hit << " dirtyEvict "
                   << out.evictedDirty << "/" << expect.evictedDirty;
                noteMismatch(summary, os.str());
                diverged = true;
            }
        }
        if (diverged)
            continue;

        if (optimizedEvictWb != ref.writebacks() || optimizedFlushWb != ref.flushWritebacks()) {
            std::ostringstream os;
            os << "trace " << t << ": writebacks " << optimizedEvictWb << "+" << optimizedFlushWb
               << " vs " << ref.writebacks() << "+" << ref.flushWritebacks();
            noteMismatch(summary, os.str());
            continue;
        }
        for (unsigned s = 0; s < ref.numSets(); ++s) {
            const auto set = cache.set(s);
            for (unsigned w = 0; w < ref.ways(); ++w) {
                if (set[w].writeCount != ref.writeCount(s, w)) {
                    std::ostringstream os;
                    os << "trace " << t << ": set " << s << " way " << w << " writes "
                       << set[w].writeCount << " vs " << ref.writeCount(s, w);
                    noteMismatch(summary, os.str());
                    s = ref.numSets();
                    break;
                }
            }
        }
    }
    return summary;
}

DifferentialSummary
diffPlanners(const PlanDiffOptions &opt)
{
    DifferentialSummary summary;
    std::mt19937_64 rng(opt.seed);
    const unsigned sizes[] = {1, 2, 3, 4, 5, 8, 16, 32, 64};
    const std::uint64_t ranges[] = {1, 3, 10, 400, 100'000};

    for (std::uint64_t v = 0; v < opt.vectors; ++v) {
        const unsigned n = sizes[rng() % std::size(sizes)];
        const std::uint64_t range = ranges[rng() % std::size(ranges)];
        std::vector<std::uint64_t> interval(n), global(n);
        for (unsigned c = 0; c < n; ++c) {
            interval[c] = rng() % (range + 1);
            global[c] = interval[c] + rng() % (range * 4 + 1);
        }
        // Mostly around the default threshold, sometimes zero.
        const double beta = (v % 7 == 0) ? 0.0 : static_cast<double>(rng() % 20'000) / 100.0;
        const unsigned lambdaMax = n / 2 > 1 ? n / 2 : 1;
        const unsigned lambda = 1 + static_cast<unsigned>(rng() % lambdaMax);

        for (SwapLimitMode mode : {SwapLimitMode::Min, SwapLimitMode::Max}) {
            ++summary.cases;
            ++summary.steps;
            const RemapDecision got = planRemap(interval, global, beta, lambda, mode);
            const RemapDecision want = straightLinePlan(interval, global, beta, lambda, mode);
            const bool sameSd =
                std::fabs(got.sdw - want.sdw) <= 1e-9 * (1.0 + std::fabs(want.sdw));
            if (got.ran != want.ran || got.swaps != want.swaps ||
                got.nHigher != want.nHigher || got.nColorToSwap != want.nColorToSwap ||
                !sameSd) {
                std::ostringstream os;
                os << "vector " << v << " (n=" << n << ", beta=" << beta << ", lambda=" << lambda
                   << ", mode=" << toString(mode) << "): ran " << got.ran << "/" << want.ran
                   << " swaps " << got.swaps.size() << "/" << want.swaps.size() << " sdw "
                   << got.sdw << "/" << want.sdw;
                noteMismatch(summary, os.str());
            }
        }
    }
    return summary;
}

} // namespace nvwear::reference
