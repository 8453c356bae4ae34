#pragma once

#include <stdexcept>
#include <string>

namespace xpkit {

enum class ErrorKind {
  Domain,    // value outside a feature domain
  Model,     // malformed or invalid model
  Contract,  // precondition of an operation violated
  Resource,  // exhaustive-search guard exceeded
  Io,        // file or parse failure
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace xpkit
