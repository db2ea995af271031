#include "nvwear/workload.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>

#include "nvwear/errors.hpp"

namespace nvwear {

namespace {

bool
isSpace(char c)
{
    return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f';
}

std::vector<std::string_view>
splitFields(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && isSpace(line[i]))
            ++i;
        const std::size_t start = i;
        while (i < line.size() && !isSpace(line[i]))
            ++i;
        if (i > start)
            out.push_back(line.substr(start, i - start));
    }
    return out;
}

} // namespace

std::optional<TraceEvent>
parseTraceLine(std::string_view line, std::size_t lineNo)
{
    const auto fields = splitFields(line);
    if (fields.empty() || fields.front().front() == '#')
        return std::nullopt;
    if (fields.size() < 3)
        throw ParseError(lineNo, "expected 3 fields, got " + std::to_string(fields.size()));
    if (fields.size() > 3)
        throw ParseError(lineNo, "trailing data after icount");

    TraceEvent ev;
    if (fields[0] == "R")
        ev.kind = AccessKind::Read;
    else if (fields[0] == "W")
        ev.kind = AccessKind::Write;
    else
        throw ParseError(lineNo, "unknown kind '" + std::string(fields[0]) + "'");

    std::string_view a = fields[1];
    if (a.size() < 3 || a[0] != '0' || (a[1] != 'x' && a[1] != 'X'))
        throw ParseError(lineNo, "address must be 0x-prefixed hex");
    a.remove_prefix(2);
    auto [pa, eca] = std::from_chars(a.data(), a.data() + a.size(), ev.addr, 16);
    if (eca != std::errc{} || pa != a.data() + a.size())
        throw ParseError(lineNo, "bad hex address '" + std::string(fields[1]) + "'");
    if (ev.addr >= kMaxPhysicalAddress)
        throw ParseError(lineNo, "address exceeds 48 bits");

    std::string_view ic = fields[2];
    auto [pi, eci] = std::from_chars(ic.data(), ic.data() + ic.size(), ev.icount, 10);
    if (eci != std::errc{} || pi != ic.data() + ic.size())
        throw ParseError(lineNo, "bad instruction count '" + std::string(ic) + "'");
    return ev;
}

std::string
formatTraceEvent(const TraceEvent &ev)
{
    char buf[64];
    char *p = buf;
    *p++ = ev.kind == AccessKind::Write ? 'W' : 'R';
    *p++ = ' ';
    *p++ = '0';
    *p++ = 'x';
    p = std::to_chars(p, buf + sizeof(buf), ev.addr, 16).ptr;
    *p++ = ' ';
    p = std::to_chars(p, buf + sizeof(buf), ev.icount).ptr;
    return std::string(buf, p);
}

TraceReader::TraceReader(const std::filesystem::path &path) : file_(path), in_(&file_)
{
    if (!file_)
        throw IoError("cannot open trace '" + path.string() + "'");
}

TraceReader::TraceReader(std::istream &in) : in_(&in) {}

std::optional<TraceEvent>
TraceReader::next()
{
    std::string line;
    while (std::getline(*in_, line)) {
        ++lineNo_;
        auto ev = parseTraceLine(line, lineNo_);
        if (!ev)
            continue;
        if (ev->icount < lastIcount_)
            throw ParseError(lineNo_, "instruction count decreases");
        lastIcount_ = ev->icount;
        return ev;
    }
    if (in_->bad())
        throw IoError("read error after line " + std::to_string(lineNo_));
    return std::nullopt;
}

std::vector<TraceEvent>
readTrace(const std::filesystem::path &path)
{
    TraceReader reader(path);
    std::vector<TraceEvent> out;
    while (auto ev = reader.next())
        out.push_back(*ev);
    return out;
}

void
writeTrace(std::ostream &out, const std::vector<TraceEvent> &events)
{
    for (const auto &ev : events)
        out << formatTraceEvent(ev) << '\n';
}

void
writeTrace(const std::filesystem::path &path, const std::vector<TraceEvent> &events)
{
    std::error_code ec;
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec)
            throw IoError("cannot create '" + path.parent_path().string() + "': " + ec.message());
    }
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw IoError("cannot write '" + tmp.string() + "'");
        writeTrace(out, events);
        out.flush();
        if (!out)
            throw IoError("write failed for '" + tmp.string() + "'");
    }
    std::filesystem::rename(tmp, path, ec);
    if (ec)
        throw IoError("cannot rename '" + tmp.string() + "': " + ec.message());
}

std::string_view
toString(GeneratorKind k)
{
    switch (k) {
      case GeneratorKind::Uniform: return "uniform";
      case GeneratorKind::Zipf: return "zipf";
      case GeneratorKind::Hotset: return "hotset";
      case GeneratorKind::RoundRobin: return "roundrobin";
    }
    return "?";
}

GeneratorKind
parseGeneratorKind(std::string_view s)
{
    if (s == "uniform") return GeneratorKind::Uniform;
    if (s == "zipf") return GeneratorKind::Zipf;
    if (s == "hotset") return GeneratorKind::Hotset;
    if (s == "roundrobin") return GeneratorKind::RoundRobin;
    throw ConfigError("unknown generator '" + std::string(s) +
                      "' (expected uniform|zipf|hotset|roundrobin)");
}

void
GeneratorSpec::validate() const
{
    auto inUnit = [](double v) { return v >= 0.0 && v <= 1.0; };
    if (!inUnit(writeFraction))
        throw ConfigError("writeFraction must be in [0, 1]");
    if (!inUnit(hotsetFraction) || !inUnit(hotsetProbability))
        throw ConfigError("hotset fraction and probability must be in [0, 1]");
    if (!(zipfExponent >= 0.0) || !std::isfinite(zipfExponent))
        throw ConfigError("zipf exponent must be >= 0");
    if (pageCount == 0)
        throw ConfigError("pageCount must be positive");
    if (instructionsPerAccess == 0)
        throw ConfigError("instructionsPerAccess must be positive");
    if (!isPowerOfTwo(pageSizeBytes) || !isPowerOfTwo(blockSizeBytes) ||
        blockSizeBytes > pageSizeBytes)
        throw ConfigError("generator page/block sizes must be powers of two, block <= page");
    if (pageCount > kMaxPhysicalAddress / pageSizeBytes)
        throw ConfigError("pageCount exceeds the 48-bit physical address space");
}

std::uint64_t
GeneratorSpec::hotPageCount() const
{
    const auto hot = static_cast<std::uint64_t>(
        std::ceil(hotsetFraction * static_cast<double>(pageCount)));
    return std::clamp<std::uint64_t>(hot, 1, pageCount);
}

TraceGenerator::TraceGenerator(const GeneratorSpec &spec) : spec_(spec), rng_(spec.seed)
{
    spec_.validate();
    if (spec_.kind == GeneratorKind::Zipf) {
        zipfCdf_.resize(spec_.pageCount);
        double acc = 0.0;
        for (std::uint64_t r = 0; r < spec_.pageCount; ++r) {
            acc += 1.0 / std::pow(static_cast<double>(r + 1), spec_.zipfExponent);
            zipfCdf_[r] = acc;
        }
        for (auto &c : zipfCdf_)
            c /= acc;
        zipfCdf_.back() = 1.0;
    }
}

double
TraceGenerator::uniform01()
{
    return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
}

std::uint64_t
TraceGenerator::uniformBelow(std::uint64_t bound)
{
    // Rejection sampling removes modulo bias.
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
        x = rng_();
    } while (x >= limit);
    return x % bound;
}

std::uint64_t
TraceGenerator::pickPage()
{
    switch (spec_.kind) {
      case GeneratorKind::Uniform:
        return uniformBelow(spec_.pageCount);
      case GeneratorKind::Zipf: {
        const double u = uniform01();
        auto it = std::upper_bound(zipfCdf_.begin(), zipfCdf_.end(), u);
        if (it == zipfCdf_.end())
            --it;
        return static_cast<std::uint64_t>(it - zipfCdf_.begin());
      }
      case GeneratorKind::Hotset: {
        const std::uint64_t hot = spec_.hotPageCount();
        const bool pickHot = uniform01() < spec_.hotsetProbability;
        if (pickHot || hot == spec_.pageCount)
            return uniformBelow(hot);
        return hot + uniformBelow(spec_.pageCount - hot);
      }
      case GeneratorKind::RoundRobin:
        return produced_ % spec_.pageCount;
    }
    return 0;
}

std::optional<TraceEvent>
TraceGenerator::next()
{
    if (produced_ >= spec_.numEvents)
        return std::nullopt;

    const std::uint64_t page = pickPage();
    std::uint64_t block;
    if (spec_.kind == GeneratorKind::RoundRobin)
        block = (produced_ / spec_.pageCount) % spec_.blocksPerPage();
    else
        block = uniformBelow(spec_.blocksPerPage());

    TraceEvent ev;
    ev.kind = uniform01() < spec_.writeFraction ? AccessKind::Write : AccessKind::Read;
    ev.addr = page * spec_.pageSizeBytes + block * spec_.blockSizeBytes;
    ++produced_;
    ev.icount = produced_ * spec_.instructionsPerAccess;
    return ev;
}

std::vector<TraceEvent>
generate(const GeneratorSpec &spec)
{
    TraceGenerator gen(spec);
    std::vector<TraceEvent> out;
    out.reserve(spec.numEvents);
    while (auto ev = gen.next())
        out.push_back(*ev);
    return out;
}

} // namespace nvwear
