#pragma once

#include <stdexcept>
#include <string>

namespace toricflip {

enum class ErrorCode {
  precondition,
  dimension_mismatch,
  invalid_fan,
  not_refinement,
  unsupported,
  internal,
  schema,
  io,
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::precondition: return "precondition";
    case ErrorCode::dimension_mismatch: return "dimension_mismatch";
    case ErrorCode::invalid_fan: return "invalid_fan";
    case ErrorCode::not_refinement: return "not_refinement";
    case ErrorCode::unsupported: return "unsupported";
    case ErrorCode::internal: return "internal";
    case ErrorCode::schema: return "schema";
    case ErrorCode::io: return "io";
  }
  return "unknown";
}

// Every library failure is reported through this type; `code()` is stable
// and machine-readable, `what()` is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(msg), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace toricflip
