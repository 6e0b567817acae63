#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace amoeba {

// Broad failure classes; the CLI maps them onto exit codes.
enum class ErrorClass {
  Input,         // malformed polynomial, bad flags, violated preconditions
  Numerical,     // root finder or quadrature could not reach tolerance
  Verification,  // a checked identity (linking, closure, ord injectivity) failed
};

class Error : public std::runtime_error {
 public:
  Error(ErrorClass cls, std::string code, const std::string& what)
      : std::runtime_error(what), cls_(cls), code_(std::move(code)) {}

  ErrorClass error_class() const noexcept { return cls_; }
  // Short machine-readable tag, e.g. "syntax", "degenerate_fiber".
  const std::string& code() const noexcept { return code_; }

 private:
  ErrorClass cls_;
  std::string code_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t offset, const std::string& msg)
      : Error(ErrorClass::Input, "syntax",
              msg + " at byte " + std::to_string(offset)),
        offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

// Process exit status for each class: 1 input, 2 numerical, 3 verification.
inline int exit_code(ErrorClass c) {
  switch (c) {
    case ErrorClass::Input: return 1;
    case ErrorClass::Numerical: return 2;
    case ErrorClass::Verification: return 3;
  }
  return 2;
}

inline Error input_error(std::string code, const std::string& what) {
  return Error(ErrorClass::Input, std::move(code), what);
}

inline Error numerical_error(std::string code, const std::string& what) {
  return Error(ErrorClass::Numerical, std::move(code), what);
}

inline Error verification_error(std::string code, const std::string& what) {
  return Error(ErrorClass::Verification, std::move(code), what);
}

}  // namespace amoeba
