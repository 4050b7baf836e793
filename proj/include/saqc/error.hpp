#pragma once

#include <stdexcept>
#include <string>

namespace saqc {

// Error categories. The CLI maps each to a distinct exit code.
enum class ErrorKind {
  input,        // precondition violated by the caller
  capacity,     // request exceeds an enumeration/dense-size cap
  generation,   // random generation ran out of attempts
  state,        // object lacks data the operation needs
  parse,        // malformed file
  accuracy,     // numerical tolerance not met
  degenerate,   // zero gap where a positive one is required
  unsupported,  // valid request the chosen configuration cannot serve
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::input: return "input error";
    case ErrorKind::capacity: return "capacity error";
    case ErrorKind::generation: return "generation failure";
    case ErrorKind::state: return "state error";
    case ErrorKind::parse: return "parse error";
    case ErrorKind::accuracy: return "accuracy error";
    case ErrorKind::degenerate: return "degenerate gap";
    case ErrorKind::unsupported: return "unsupported";
  }
  return "error";
}

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) fail(kind, what);
}

}  // namespace saqc
