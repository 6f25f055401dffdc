#pragma once

#include <stdexcept>
#include <string>

namespace birat {

// Exit-code contract shared with the CLI:
// 0 ok, 2 data-consistency, 3 capability/missing-data, 4 resource budget,
// 5 precision.
enum class ErrorCode { ok = 0, data = 2, capability = 3, resource = 4, precision = 5 };

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Inconsistent or invalid input data (bad lattice, violated identity, parity).
struct DataError : Error {
  explicit DataError(const std::string& m) : Error(ErrorCode::data, m) {}
};

// Operation needs data the caller did not supply (missing inverse, orbit data).
struct CapabilityError : Error {
  explicit CapabilityError(const std::string& m) : Error(ErrorCode::capability, m) {}
};

// Degree/coefficient budget exceeded.
struct ResourceError : Error {
  explicit ResourceError(const std::string& m) : Error(ErrorCode::resource, m) {}
};

// Numeric separation failed at the maximum working precision.
struct PrecisionError : Error {
  explicit PrecisionError(const std::string& m) : Error(ErrorCode::precision, m) {}
};

}  // namespace birat
