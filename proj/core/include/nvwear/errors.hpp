#ifndef NVWEAR_ERRORS_HPP
#define NVWEAR_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nvwear {

/// Raised when a cache, policy, workload or experiment setting is out of range
/// or inconsistent with the rest of the configuration.
class ConfigError : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed trace or config input. line() is 1-based; 0 when unknown.
class ParseError : public std::runtime_error
{
  public:
    ParseError(std::size_t line, const std::string &reason)
        : std::runtime_error("line " + std::to_string(line) + ": " + reason),
          line_(line), reason_(reason)
    {}

    std::size_t line() const noexcept { return line_; }
    const std::string &reason() const noexcept { return reason_; }

  private:
    std::size_t line_;
    std::string reason_;
};

class IoError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

} // namespace nvwear

#endif // NVWEAR_ERRORS_HPP
