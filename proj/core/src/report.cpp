#include "nvwear/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "nvwear/errors.hpp"

namespace nvwear {

namespace {

std::string
fixed(double v, int digits = 6)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
    return buf;
}

std::string
general(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

std::string
orUndefined(const std::optional<double> &v)
{
    return v ? fixed(*v) : std::string("undefined");
}

std::vector<const PolicyRun *>
allRuns(const ExperimentReport &r)
{
    std::vector<const PolicyRun *> runs{&r.baseline};
    for (const auto &t : r.techniques)
        runs.push_back(&t);
    return runs;
}

std::string
swapList(const std::vector<SwapPair> &swaps)
{
    std::string s;
    for (const auto &[a, b] : swaps) {
        if (!s.empty())
            s += ';';
        s += std::to_string(a) + "-" + std::to_string(b);
    }
    return s;
}

} // namespace

std::string
reportCsv(const ExperimentReport &report)
{
    std::ostringstream os;
    os << kReportColumns << '\n';
    for (const ReportRow &r : report.rows()) {
        os << r.policy << ',' << r.seed << ',' << r.workload << ',' << r.maxBlockWrites << ','
           << orUndefined(r.relLifetime) << ',' << r.cycles << ',' << orUndefined(r.relPerf)
           << ',' << general(r.energyJ) << ',' << fixed(r.energyDeltaPct) << ','
           << orUndefined(r.mpki) << ',' << orUndefined(r.mpkiDelta) << ',' << r.remapRuns
           << ',' << r.flushWritebacks << ',' << fixed(r.blockWriteSD) << '\n';
    }
    return os.str();
}

std::string
intervalCsv(const ExperimentReport &report)
{
    std::ostringstream os;
    os << kIntervalColumns << '\n';
    for (const PolicyRun *run : allRuns(report)) {
        for (const IntervalRecord &rec : run->result.intervals) {
            os << toString(run->policy) << ',' << rec.index << ',' << rec.cycle << ','
               << fixed(rec.sdw) << ',' << rec.nHigher << ',' << rec.nColorToSwap << ','
               << swapList(rec.swaps) << ',' << rec.writebacks << '\n';
        }
    }
    return os.str();
}

std::string
mappingCsv(const ExperimentReport &report)
{
    std::ostringstream os;
    os << kMappingColumns << '\n';
    for (const PolicyRun *run : allRuns(report)) {
        for (const MappingSnapshot &snap : run->result.mappings) {
            for (std::size_t r = 0; r < snap.colorOfRegion.size(); ++r)
                os << toString(run->policy) << ',' << snap.interval << ',' << r << ','
                   << snap.colorOfRegion[r] << '\n';
        }
    }
    return os.str();
}

std::string
plotCsv(const ExperimentReport &report)
{
    std::ostringstream os;
    os << kPlotColumns << '\n';
    for (const ReportRow &r : report.rows()) {
        auto emit = [&](std::string_view metric, const std::string &value) {
            os << metric << ',' << r.policy << ',' << r.workload << ',' << value << '\n';
        };
        emit("maxBlockWrites", std::to_string(r.maxBlockWrites));
        emit("relLifetime", orUndefined(r.relLifetime));
        emit("cycles", std::to_string(r.cycles));
        emit("relPerf", orUndefined(r.relPerf));
        emit("energyJ", general(r.energyJ));
        emit("energyDeltaPct", fixed(r.energyDeltaPct));
        emit("mpki", orUndefined(r.mpki));
        emit("mpkiDelta", orUndefined(r.mpkiDelta));
        emit("remapRuns", std::to_string(r.remapRuns));
        emit("flushWritebacks", std::to_string(r.flushWritebacks));
        emit("blockWriteSD", fixed(r.blockWriteSD));
    }
    return os.str();
}

std::string
summaryMarkdown(const ExperimentReport &report, std::string_view timestamp)
{
    std::ostringstream os;
    os << "<!-- generated " << timestamp << " -->\n";
    os << "# nvwear report: " << report.workload << " (seed " << report.seed << ")\n\n";
    os << "| policy | max block writes | relative lifetime | relative perf (cycle proxy) "
          "| energy (J) | energy saving % | MPKI | MPKI delta | remap runs | flush writebacks |\n";
    os << "|---|---|---|---|---|---|---|---|---|---|\n";
    for (const ReportRow &r : report.rows()) {
        os << "| " << r.policy << " | " << r.maxBlockWrites << " | "
           << orUndefined(r.relLifetime) << " | " << orUndefined(r.relPerf) << " | "
           << general(r.energyJ) << " | " << fixed(r.energyDeltaPct, 3) << " | "
           << orUndefined(r.mpki) << " | " << orUndefined(r.mpkiDelta) << " | "
           << r.remapRuns << " | " << r.flushWritebacks << " |\n";
    }
    os << "\nRelative metrics are taken against the `"
       << toString(report.baseline.policy)
       << "` row. Relative performance is baseline cycles / technique cycles under the "
          "additive timing model, a coarse proxy for speedup.\n";
    return os.str();
}

void
writeFileAtomic(const std::filesystem::path &path, std::string_view content)
{
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw IoError("cannot write '" + tmp.string() + "'");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out)
            throw IoError("write failed for '" + tmp.string() + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec)
        throw IoError("cannot rename onto '" + path.string() + "': " + ec.message());
}

std::vector<std::filesystem::path>
writeReport(const ExperimentReport &report, const OutputConfig &out,
            std::string_view timestamp)
{
    std::error_code ec;
    std::filesystem::create_directories(out.dir, ec);
    if (ec)
        throw IoError("cannot create output directory '" + out.dir.string() +
                      "': " + ec.message());

    std::vector<std::filesystem::path> written;
    auto put = [&](const char *name, const std::string &body) {
        const auto p = out.dir / name;
        writeFileAtomic(p, body);
        written.push_back(p);
    };
    if (out.csv) {
        put("report.csv", reportCsv(report));
        put("intervals.csv", intervalCsv(report));
        put("mapping.csv", mappingCsv(report));
    }
    if (out.plotData)
        put("plot.csv", plotCsv(report));
    if (out.markdown)
        put("summary.md", summaryMarkdown(report, timestamp));
    return written;
}

} // namespace nvwear
