#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace oll {

enum class ErrorKind {
  parse_error,           // malformed input file / JSON
  invariant_violation,   // a domain-type invariant failed at construction
  domain_error,          // argument outside an operation's precondition
  insufficient_room,     // witness set E_n does not fit the admissible region
  search_exhausted,      // no t_n within floating range; phi likely satisfies the condition
  hypothesis_violation,  // theorem hypothesis (e.g. W(inf) = inf) not met
  target_unreachable,    // cumulative-inverse target exceeds total weight mass
  internal_error,        // consistency check failed; indicates a bug, not a valid outcome
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Exit-code contract of the command line tool.
inline int exit_code_for(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::parse_error:
    case ErrorKind::invariant_violation:
      return 2;
    case ErrorKind::insufficient_room:
      return 3;
    case ErrorKind::search_exhausted:
      return 4;
    case ErrorKind::hypothesis_violation:
      return 5;
    default:
      return 1;
  }
}

}  // namespace oll
