#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace phfanon {

// Stable machine-readable error categories; the CLI maps them to exit codes.
enum class ErrorCode {
  Parse,       // malformed input text (bad header, dimension mismatch, bad index)
  Structure,   // well-formed text but structurally invalid object (cell out of range)
  Degenerate,  // some component (r, j) is held by nobody: f(r, j) = 0
  CapExceeded, // an enumeration would exceed the configured group cap
  Contract,    // precondition violation (mismatched arguments, bad indices)
  Internal,    // cross-check between two computation routes failed
};

inline const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::Parse: return "parse";
    case ErrorCode::Structure: return "structure";
    case ErrorCode::Degenerate: return "degenerate";
    case ErrorCode::CapExceeded: return "cap-exceeded";
    case ErrorCode::Contract: return "contract";
    case ErrorCode::Internal: return "internal";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Parse failures carry the 1-based position of the offending token.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : Error(ErrorCode::Parse,
              "line " + std::to_string(line) + ", column " +
                  std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace phfanon
