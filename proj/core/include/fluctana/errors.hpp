#ifndef FLUCTANA_ERRORS_HPP
#define FLUCTANA_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fluctana {

/// Input that cannot support the requested computation (constant series,
/// empty window, too few points). CLI maps this to exit code 3.
class DegenerateDataError : public std::runtime_error {
 public:
  explicit DegenerateDataError(const std::string& what)
      : std::runtime_error(what) {}
};

/// Malformed input text. Carries the 1-based line number when known.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(what + " (line " + std::to_string(line) + ")"),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Remote retrieval failure. status() is the HTTP status, or 0 for
/// transport-level failures.
class FetchError : public std::runtime_error {
 public:
  FetchError(const std::string& what, int status = 0)
      : std::runtime_error(what), status_(status) {}
  int status() const noexcept { return status_; }

 private:
  int status_;
};

/// An iterative numeric routine failed to reach the requested tolerance.
/// achieved() reports the tolerance it did reach.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_(achieved) {}
  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

}  // namespace fluctana

#endif  // FLUCTANA_ERRORS_HPP
