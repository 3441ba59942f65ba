#pragma once

#include <stdexcept>
#include <string>

namespace propoor {

// Failure classes reported by the library.  The CLI maps each class to a
// distinct process exit code; library code only ever throws.
enum class errc : int {
  config = 2,      // unusable option, measure token, or experiment setting
  data = 3,        // unreadable or ill-formed input data
  degenerate = 4,  // estimator undefined on this sample (empty poor set,
                   // everyone poor, or a ratio with a vanishing denominator)
  numeric = 5,     // non-finite intermediate or an internally inconsistent
                   // variance decomposition
};

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& w) : Error(errc::config, w) {}
};

struct DataError : Error {
  explicit DataError(const std::string& w) : Error(errc::data, w) {}
};

struct DegenerateError : Error {
  explicit DegenerateError(const std::string& w) : Error(errc::degenerate, w) {}
};

struct NumericError : Error {
  explicit NumericError(const std::string& w) : Error(errc::numeric, w) {}
};

}  // namespace propoor
