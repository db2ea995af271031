#ifndef NVWEAR_WORKLOAD_HPP
#define NVWEAR_WORKLOAD_HPP

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "nvwear/cache.hpp"
#include "nvwear/cache_config.hpp"

namespace nvwear {

struct TraceEvent
{
    AccessKind kind = AccessKind::Read;
    Addr addr = 0;
    /// Cumulative instruction count; non-decreasing along a trace.
    std::uint64_t icount = 0;

    bool operator==(const TraceEvent &) const = default;
};

/// Parse one trace line "<R|W> <0x-hex addr> <decimal icount>".
/// Returns nullopt for blank and '#' comment lines. Throws ParseError.
std::optional<TraceEvent> parseTraceLine(std::string_view line, std::size_t lineNo);
std::string formatTraceEvent(const TraceEvent &ev);

/// Sequential reader over a trace file. Also checks icount monotonicity.
class TraceReader
{
  public:
    explicit TraceReader(const std::filesystem::path &path);
    explicit TraceReader(std::istream &in);

    std::optional<TraceEvent> next();
    std::size_t lineNumber() const { return lineNo_; }

  private:
    std::ifstream file_;
    std::istream *in_;
    std::size_t lineNo_ = 0;
    std::uint64_t lastIcount_ = 0;
};

std::vector<TraceEvent> readTrace(const std::filesystem::path &path);
void writeTrace(std::ostream &out, const std::vector<TraceEvent> &events);
/// Written to a temporary sibling first, then renamed over `path`.
void writeTrace(const std::filesystem::path &path, const std::vector<TraceEvent> &events);

enum class GeneratorKind { Uniform, Zipf, Hotset, RoundRobin };

std::string_view toString(GeneratorKind k);
GeneratorKind parseGeneratorKind(std::string_view s);

struct GeneratorSpec
{
    GeneratorKind kind = GeneratorKind::Uniform;
    std::uint64_t numEvents = 100'000;
    double writeFraction = 0.5;
    double zipfExponent = 1.0;
    /// Hot pages are the first ceil(hotsetFraction * pageCount) pages.
    double hotsetFraction = 0.1;
    double hotsetProbability = 0.9;
    std::uint64_t pageCount = 1024;
    std::uint64_t seed = 1;
    std::uint64_t instructionsPerAccess = 5;
    std::uint32_t pageSizeBytes = 4096;
    std::uint32_t blockSizeBytes = 64;

    void validate() const;
    bool operator==(const GeneratorSpec &) const = default;
    std::uint64_t blocksPerPage() const { return pageSizeBytes / blockSizeBytes; }
    std::uint64_t hotPageCount() const;
};

/**
 * Deterministic synthetic trace source.
 *
 * Page p occupies physical addresses [p * pageSize, (p + 1) * pageSize). Page
 * popularity rank equals page index for zipf and hotset. Event i has icount
 * (i + 1) * instructionsPerAccess. Random draws go through fixed integer
 * arithmetic on mt19937_64 so streams match across standard libraries.
 */
class TraceGenerator
{
  public:
    explicit TraceGenerator(const GeneratorSpec &spec);

    std::optional<TraceEvent> next();
    std::uint64_t produced() const { return produced_; }

  private:
    double uniform01();
    std::uint64_t uniformBelow(std::uint64_t bound);
    std::uint64_t pickPage();

    GeneratorSpec spec_;
    std::mt19937_64 rng_;
    std::vector<double> zipfCdf_;
    std::uint64_t produced_ = 0;
};

std::vector<TraceEvent> generate(const GeneratorSpec &spec);

} // namespace nvwear

#endif // NVWEAR_WORKLOAD_HPP
