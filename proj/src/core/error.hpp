#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mwec {

enum class ErrorCode {
  kParse,
  kInvalidArgument,
  kLimitExceeded,
  kIo,
  kInternal,
};

// Every failure raised by the core carries one of the codes above so the C
// boundary can map it to a status without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error(ErrorCode::kParse,
              "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class LimitExceeded : public Error {
 public:
  explicit LimitExceeded(const std::string& message)
      : Error(ErrorCode::kLimitExceeded, message) {}
};

inline Error invalid_argument(const std::string& message) {
  return Error(ErrorCode::kInvalidArgument, message);
}

}  // namespace mwec
