#pragma once

#include <stdexcept>
#include <string>

namespace invfield {

// Numeric values are shared with the C API (invfield.h).
enum class ErrorCode : int {
  ok = 0,
  invalid_argument = 1,
  domain = 2,
  mismatch = 3,
  division_by_zero = 4,
  not_found = 5,
  cap_exceeded = 6,
  infeasible = 7,
  parse = 8,
  io = 9,
  internal = 10,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace invfield
