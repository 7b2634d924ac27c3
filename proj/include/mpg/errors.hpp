#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace mpg {

/// Library error with a machine-readable kind. The kind strings surface
/// verbatim in CLI error reports, so they are part of the stable interface.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& detail)
      : std::runtime_error(detail), kind_(std::move(kind)) {}

  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

inline Error space_mismatch(const std::string& detail) { return Error("SpaceMismatch", detail); }
inline Error guard_exceeded(const std::string& detail) { return Error("GuardExceeded", detail); }
inline Error not_possibility(const std::string& detail) { return Error("NotPossibility", detail); }
inline Error invalid_argument(const std::string& detail) { return Error("InvalidArgument", detail); }
inline Error parse_error(const std::string& detail) { return Error("ParseError", detail); }
inline Error io_error(const std::string& detail) { return Error("IoError", detail); }
inline Error validation_error(const std::string& detail) { return Error("ValidationError", detail); }
inline Error internal_error(const std::string& detail) { return Error("InternalError", detail); }

}  // namespace mpg
