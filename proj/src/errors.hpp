#pragma once

#include <stdexcept>
#include <string>

namespace interplan {

// Malformed .kg/.dag text. `line` is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& msg, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_ = 0;
};

// Contradictory knowledge: incompatible marks were combined, or orientation
// propagation produced a directed cycle or a collider that was never implied.
// Unreachable when updates are driven by a consistent oracle, so any throw
// signals a bug or inconsistent input.
class ConflictError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An enumeration limit or the experiment-count guard was exceeded.
class GuardError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace interplan
