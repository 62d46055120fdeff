#pragma once

#include <stdexcept>
#include <string>

namespace chromest {

/// Malformed graph file. Carries the 1-based line number of the offending line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// The graph is unsuitable for the requested operation (disconnected input,
/// generator could not produce a connected graph, ...).
class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An exact oracle refused to run because the input exceeds its size cap.
class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(const std::string& oracle, int size, int cap)
      : std::runtime_error(oracle + " oracle refuses graphs with more than " + std::to_string(cap) +
                           " vertices (got " + std::to_string(size) + ")"),
        size_(size),
        cap_(cap) {}

  int size() const noexcept { return size_; }
  int cap() const noexcept { return cap_; }

 private:
  int size_;
  int cap_;
};

}  // namespace chromest
