#pragma once

#include <stdexcept>
#include <string>

namespace curvband {

/// Malformed edge-list input (reported with a 1-based line number).
class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

/// Input violates the simple-graph contract (self-loop, duplicate edge, bad vertex).
class GraphError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Invalid generator or profile parameters.
class ParameterError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A randomized generator exhausted its retry/restart budget.
class GenerationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A required distance is infinite (disconnected support pair).
class ConnectivityError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Measures handed to the transport solver are not balanced probability measures.
class NormalizationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace curvband
