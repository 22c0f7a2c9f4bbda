#pragma once

#include <stdexcept>
#include <string>

namespace uamm {

class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// Raised when a fixed-point intermediate or a resulting MV leaves its
// representable range. Results never wrap or saturate silently.
class OverflowError : public Error
{
public:
  using Error::Error;
};

// Bad user input: config values, file names, malformed data files.
class ConfigError : public Error
{
public:
  using Error::Error;
};

} // namespace uamm
