#include "nvwear/experiment.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <future>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "nvwear/errors.hpp"

namespace nvwear {

namespace pt = boost::property_tree;

std::string
WorkloadSource::label() const
{
    if (!name.empty())
        return name;
    if (!generator)
        return tracePath.stem().string();
    std::ostringstream os;
    os << toString(generator->kind);
    if (generator->kind == GeneratorKind::Zipf)
        os << "-s" << generator->zipfExponent;
    else if (generator->kind == GeneratorKind::Hotset)
        os << "-" << generator->hotsetProbability << "@" << generator->hotsetFraction;
    return os.str();
}

void
ExperimentConfig::validate()
{
    sim.cache.validate();
    sim.energy.validate();
    const std::uint32_t n = computeNumColors(sim.cache);
    sim.params.validate(n);
    if (sim.policy == PolicyKind::Xor && !isPowerOfTwo(n))
        throw ConfigError("xor policy needs a power-of-two color count");
    if (workload.generator) {
        workload.generator->pageSizeBytes = sim.cache.pageSizeBytes;
        workload.generator->blockSizeBytes = sim.cache.blockSizeBytes;
        workload.generator->validate();
    } else {
        if (workload.tracePath.empty())
            throw ConfigError("workload needs either a generator or a trace path");
        if (!std::filesystem::exists(workload.tracePath))
            throw ConfigError("trace file '" + workload.tracePath.string() + "' does not exist");
    }
}

namespace {

std::string
trim(std::string s)
{
    auto notSpace = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), notSpace));
    s.erase(std::find_if(s.rbegin(), s.rend(), notSpace).base(), s.end());
    return s;
}

std::string
lower(std::string s)
{
    std::ranges::transform(s, s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

template <typename T>
T
parseUnsigned(const std::string &key, const std::string &text)
{
    T v{};
    const std::string t = trim(text);
    auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc{} || p != t.data() + t.size() || t.empty())
        throw ConfigError(key + ": expected a non-negative integer, got '" + text + "'");
    return v;
}

double
parseDouble(const std::string &key, const std::string &text)
{
    const std::string t = trim(text);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(t, &used);
    } catch (const std::exception &) {
        used = 0;
    }
    if (used == 0 || used != t.size())
        throw ConfigError(key + ": expected a number, got '" + text + "'");
    return v;
}

std::uint32_t
narrow32(const std::string &key, std::uint64_t v)
{
    if (v > UINT32_MAX)
        throw ConfigError(key + ": value too large");
    return static_cast<std::uint32_t>(v);
}

} // namespace

std::uint64_t
parseSize(const std::string &text)
{
    std::string t = trim(text);
    std::uint64_t mult = 1;
    const std::string l = lower(t);
    struct Suffix { const char *s; std::uint64_t m; };
    for (const Suffix sfx : {Suffix{"kib", 1ull << 10}, Suffix{"mib", 1ull << 20},
                             Suffix{"gib", 1ull << 30}, Suffix{"k", 1ull << 10},
                             Suffix{"m", 1ull << 20}, Suffix{"g", 1ull << 30}}) {
        const std::string s = sfx.s;
        if (l.size() > s.size() && l.ends_with(s)) {
            mult = sfx.m;
            t = trim(t.substr(0, t.size() - s.size()));
            break;
        }
    }
    const auto v = parseUnsigned<std::uint64_t>("size", t);
    if (v != 0 && mult > UINT64_MAX / v)
        throw ConfigError("size overflows: '" + text + "'");
    return v * mult;
}

bool
parseOnOff(const std::string &text)
{
    const std::string l = lower(trim(text));
    if (l == "on" || l == "true" || l == "1" || l == "yes")
        return true;
    if (l == "off" || l == "false" || l == "0" || l == "no")
        return false;
    throw ConfigError("expected on|off, got '" + text + "'");
}

ExperimentConfig
parseConfig(const std::string &text)
{
    // Boost's INI reader only knows whole-line ';' comments. Also accept '#'
    // lines and a trailing comment after whitespace.
    std::istringstream in(text);
    std::ostringstream cleaned;
    for (std::string line; std::getline(in, line);) {
        const std::string t = trim(line);
        if (!t.empty() && (t.front() == '#' || t.front() == ';')) {
            cleaned << '\n';
            continue;
        }
        for (std::size_t i = 1; i < line.size(); ++i) {
            if ((line[i] == ';' || line[i] == '#') && (line[i - 1] == ' ' || line[i - 1] == '\t')) {
                line.erase(i);
                break;
            }
        }
        cleaned << line << '\n';
    }

    pt::ptree tree;
    std::istringstream src(cleaned.str());
    try {
        pt::read_ini(src, tree);
    } catch (const pt::ini_parser_error &e) {
        throw ParseError(e.line(), e.message());
    }

    ExperimentConfig cfg;
    bool sawTrace = false;
    bool sawGenerator = false;
    const std::set<std::string> sections = {"cache", "policy", "workload", "energy", "output"};

    for (const auto &[section, body] : tree) {
        if (!sections.contains(section))
            throw ConfigError("unknown config section [" + section + "]");
        for (const auto &[rawKey, node] : body) {
            const std::string key = section + "." + rawKey;
            const std::string v = node.data();
            if (section == "cache") {
                auto &c = cfg.sim.cache;
                if (rawKey == "size") c.cacheSizeBytes = parseSize(v);
                else if (rawKey == "associativity") c.associativity = narrow32(key, parseUnsigned<std::uint64_t>(key, v));
                else if (rawKey == "block_size") c.blockSizeBytes = narrow32(key, parseSize(v));
                else if (rawKey == "page_size") c.pageSizeBytes = narrow32(key, parseSize(v));
                else if (rawKey == "hit_read_latency") c.hitReadLatency = parseUnsigned<Cycles>(key, v);
                else if (rawKey == "hit_write_latency") c.hitWriteLatency = parseUnsigned<Cycles>(key, v);
                else if (rawKey == "miss_penalty") c.missPenalty = parseUnsigned<Cycles>(key, v);
                else if (rawKey == "fill_latency") c.fillLatency = parseUnsigned<Cycles>(key, v);
                else if (rawKey == "frequency_hz") c.coreFrequencyHz = parseDouble(key, v);
                else if (rawKey == "count_fills") c.countFills = parseOnOff(v);
                else throw ConfigError("unknown key " + key);
            } else if (section == "policy") {
                auto &p = cfg.sim.params;
                if (rawKey == "kind") cfg.sim.policy = parsePolicyKind(trim(v));
                else if (rawKey == "beta") p.beta = parseDouble(key, v);
                else if (rawKey == "lambda") p.lambda = narrow32(key, parseUnsigned<std::uint64_t>(key, v));
                else if (rawKey == "k") p.kWrites = parseUnsigned<std::uint64_t>(key, v);
                else if (rawKey == "min_gap_cycles") p.minGapCycles = parseUnsigned<Cycles>(key, v);
                else if (rawKey == "swap_limit_mode") p.swapLimitMode = parseSwapLimitMode(trim(v));
                else throw ConfigError("unknown key " + key);
            } else if (section == "workload") {
                auto &g = *cfg.workload.generator;
                if (rawKey == "generator") { g.kind = parseGeneratorKind(trim(v)); sawGenerator = true; }
                else if (rawKey == "trace") { cfg.workload.tracePath = trim(v); sawTrace = true; }
                else if (rawKey == "name") cfg.workload.name = trim(v);
                else if (rawKey == "events") g.numEvents = parseUnsigned<std::uint64_t>(key, v);
                else if (rawKey == "write_fraction") g.writeFraction = parseDouble(key, v);
                else if (rawKey == "zipf_exponent") g.zipfExponent = parseDouble(key, v);
                else if (rawKey == "hotset_fraction") g.hotsetFraction = parseDouble(key, v);
                else if (rawKey == "hotset_probability") g.hotsetProbability = parseDouble(key, v);
                else if (rawKey == "pages") g.pageCount = parseUnsigned<std::uint64_t>(key, v);
                else if (rawKey == "seed") g.seed = parseUnsigned<std::uint64_t>(key, v);
                else if (rawKey == "instructions_per_access") g.instructionsPerAccess = parseUnsigned<std::uint64_t>(key, v);
                else throw ConfigError("unknown key " + key);
            } else if (section == "energy") {
                auto &e = cfg.sim.energy;
                if (rawKey == "read_nj") e.readEnergyJ = parseDouble(key, v) * 1e-9;
                else if (rawKey == "write_nj") e.writeEnergyJ = parseDouble(key, v) * 1e-9;
                else if (rawKey == "cache_leakage_mw") e.cacheLeakageW = parseDouble(key, v) * 1e-3;
                else if (rawKey == "mem_access_nj") e.memAccessEnergyJ = parseDouble(key, v) * 1e-9;
                else if (rawKey == "mem_leakage_w") e.memLeakageW = parseDouble(key, v);
                else throw ConfigError("unknown key " + key);
            } else {
                auto &o = cfg.output;
                if (rawKey == "dir") o.dir = trim(v);
                else if (rawKey == "formats") {
                    o.csv = o.markdown = o.plotData = false;
                    std::istringstream list(v);
                    for (std::string f; std::getline(list, f, ',');) {
                        f = lower(trim(f));
                        if (f == "csv") o.csv = true;
                        else if (f == "markdown" || f == "md") o.markdown = true;
                        else if (f == "plot") o.plotData = true;
                        else if (!f.empty()) throw ConfigError("unknown output format '" + f + "'");
                    }
                } else throw ConfigError("unknown key " + key);
            }
        }
    }
    if (sawTrace && sawGenerator)
        throw ConfigError("[workload] sets both 'trace' and 'generator'");
    if (sawTrace)
        cfg.workload.generator.reset();
    return cfg;
}

ExperimentConfig
loadConfig(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open config '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    ExperimentConfig cfg = parseConfig(ss.str());
    // Relative trace paths are resolved against the config file's directory.
    if (!cfg.workload.tracePath.empty() && cfg.workload.tracePath.is_relative())
        cfg.workload.tracePath = path.parent_path() / cfg.workload.tracePath;
    return cfg;
}

void
applyOverrides(ExperimentConfig &cfg, const ConfigOverrides &o)
{
    if (o.policy) cfg.sim.policy = *o.policy;
    if (o.outDir) cfg.output.dir = *o.outDir;
    if (o.tracePath) {
        cfg.workload.tracePath = *o.tracePath;
        cfg.workload.generator.reset();
    }
    if (o.seed) {
        if (!cfg.workload.generator)
            throw ConfigError("--seed applies only to generated workloads");
        cfg.workload.generator->seed = *o.seed;
    }
    if (o.kWrites) cfg.sim.params.kWrites = *o.kWrites;
    if (o.beta) cfg.sim.params.beta = *o.beta;
    if (o.lambda) cfg.sim.params.lambda = *o.lambda;
    if (o.swapLimitMode) cfg.sim.params.swapLimitMode = *o.swapLimitMode;
    if (o.countFills) cfg.sim.cache.countFills = *o.countFills;
}

SimulationResult
simulateWorkload(const SimulationConfig &sim, const WorkloadSource &w)
{
    if (w.generator) {
        GeneratorSpec spec = *w.generator;
        spec.pageSizeBytes = sim.cache.pageSizeBytes;
        spec.blockSizeBytes = sim.cache.blockSizeBytes;
        TraceGenerator gen(spec);
        return simulate(sim, EventSource([&gen] { return gen.next(); }));
    }
    TraceReader reader(w.tracePath);
    return simulate(sim, EventSource([&reader] { return reader.next(); }));
}

ReportRow
makeRow(const PolicyRun &run, const PolicyRun &baseline, const std::string &workload,
        std::uint64_t seed)
{
    const RunStats &s = run.result.stats;
    const RunStats &b = baseline.result.stats;
    ReportRow row;
    row.policy = std::string(toString(run.policy));
    row.seed = seed;
    row.workload = workload;
    row.maxBlockWrites = s.maxBlockWrites;
    row.relLifetime = relativeLifetime(b, s);
    row.cycles = s.cycles;
    row.relPerf = relativePerformance(b, s);
    row.energyJ = run.result.energyJ;
    const double be = baseline.result.energyJ;
    row.energyDeltaPct = be > 0.0 ? (be - row.energyJ) / be * 100.0 : 0.0;
    row.mpki = run.result.mpki;
    if (run.result.mpki && baseline.result.mpki)
        row.mpkiDelta = *run.result.mpki - *baseline.result.mpki;
    row.remapRuns = s.remapRuns;
    row.flushWritebacks = s.flushWritebacks;
    row.blockWriteSD = s.perBlockWriteSD;
    return row;
}

std::vector<ReportRow>
ExperimentReport::rows() const
{
    std::vector<ReportRow> out;
    out.push_back(makeRow(baseline, baseline, workload, seed));
    for (const auto &t : techniques)
        out.push_back(makeRow(t, baseline, workload, seed));
    return out;
}

namespace {

ExperimentConfig
validated(ExperimentConfig cfg)
{
    cfg.validate();
    return cfg;
}

PolicyRun
runPolicy(const SimulationConfig &sim, const WorkloadSource &w)
{
    return PolicyRun{sim.policy, simulateWorkload(sim, w)};
}

bool
sameGeometry(const CacheConfig &a, const CacheConfig &b)
{
    return a.cacheSizeBytes == b.cacheSizeBytes && a.associativity == b.associativity &&
           a.blockSizeBytes == b.blockSizeBytes && a.pageSizeBytes == b.pageSizeBytes;
}

bool
sameWorkload(const WorkloadSource &a, const WorkloadSource &b)
{
    if (a.generator.has_value() != b.generator.has_value())
        return false;
    if (a.generator)
        return *a.generator == *b.generator;
    std::error_code ec;
    return std::filesystem::equivalent(a.tracePath, b.tracePath, ec);
}

} // namespace

ExperimentReport
runExperiment(const ExperimentConfig &input)
{
    const ExperimentConfig cfg = validated(input);
    ExperimentReport report;
    report.workload = cfg.workload.label();
    report.seed = cfg.workload.seed();

    SimulationConfig base = cfg.sim;
    base.policy = PolicyKind::Static;
    if (cfg.sim.policy == PolicyKind::Static) {
        report.baseline = runPolicy(base, cfg.workload);
        return report;
    }
    auto baseFuture = std::async(std::launch::async,
                                 [&] { return runPolicy(base, cfg.workload); });
    report.techniques.push_back(runPolicy(cfg.sim, cfg.workload));
    report.baseline = baseFuture.get();
    return report;
}

ExperimentReport
compareExperiments(const ExperimentConfig &baselineIn, const ExperimentConfig &techniqueIn)
{
    const ExperimentConfig base = validated(baselineIn);
    const ExperimentConfig tech = validated(techniqueIn);
    if (!sameWorkload(base.workload, tech.workload))
        throw ConfigError("compare: baseline and technique use different workloads");
    if (!sameGeometry(base.sim.cache, tech.sim.cache))
        throw ConfigError("compare: baseline and technique use different cache geometries");

    ExperimentReport report;
    report.workload = base.workload.label();
    report.seed = base.workload.seed();
    auto baseFuture = std::async(std::launch::async,
                                 [&] { return runPolicy(base.sim, base.workload); });
    report.techniques.push_back(runPolicy(tech.sim, tech.workload));
    report.baseline = baseFuture.get();
    return report;
}

} // namespace nvwear
