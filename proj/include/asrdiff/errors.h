#ifndef ASRDIFF_ERRORS_H_
#define ASRDIFF_ERRORS_H_

#include <stdexcept>
#include <string>

namespace asrdiff {

// Bad configuration or arguments. The CLI maps this to a usage error.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A documented precondition of an operation was not met by the caller.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Malformed input file (dictionary, resource table, cache entry, audio).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An engine failed to start, answered badly, crashed or timed out.
class EngineError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TimeoutError : public EngineError {
 public:
  using EngineError::EngineError;
};

// An engine that cannot be restarted; this takes the whole run down.
class EngineUnavailableError : public EngineError {
 public:
  using EngineError::EngineError;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace asrdiff

#endif  // ASRDIFF_ERRORS_H_
