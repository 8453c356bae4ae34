#include "xpkit/error.hpp"

namespace xpkit {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Domain:
      return "domain";
    case ErrorKind::Model:
      return "model";
    case ErrorKind::Contract:
      return "contract";
    case ErrorKind::Resource:
      return "resource";
    case ErrorKind::Io:
      return "io";
  }
  return "unknown";
}

void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace xpkit
