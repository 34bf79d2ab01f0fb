#pragma once

#include <stdexcept>
#include <string>

namespace xt {


// Base of everything this library throws on purpose.
class Exception : public std::runtime_error
{
public:
  explicit Exception(const std::string& msg)
    : std::runtime_error(msg)
  {}
};

// Malformed literal or ini text; message carries the offending position.
class ParseError : public Exception
{
  using Exception::Exception;
};

// A literal parsed fine but did not provide enough entries.
class SizeError : public Exception
{
  using Exception::Exception;
};

// A required configuration key is absent.
class MissingKeyError : public Exception
{
  using Exception::Exception;
};

// A configuration value is present but unusable (bad spec, zero normal, ...).
class ConfigError : public Exception
{
  using Exception::Exception;
};

// A factory was asked for a type id it does not provide.
class FactoryError : public Exception
{
  using Exception::Exception;
};

// The calling code violated an interface contract (wrong state, bad index, ...).
class UsageError : public Exception
{
  using Exception::Exception;
};

// Writing or reading a file failed.
class IoError : public Exception
{
  using Exception::Exception;
};

// An optional capability (e.g. a jacobian) was requested but is not provided.
class CapabilityError : public Exception
{
  using Exception::Exception;
};


} // namespace xt
