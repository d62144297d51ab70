#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace qkron {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// Status values shared with the C API (include/qkron.h keeps the C copy).
enum class Status : int {
  Ok = 0,
  ParseError = 1,
  InvalidInstance = 2,
  Singular = 3,
  CapExceeded = 4,
  IoError = 5,
  BadArgument = 6,
  InternalError = 7,
};

// Internal error type; the C API boundary converts it to a status code.
class Error : public std::runtime_error {
 public:
  Error(Status status, const std::string& what)
      : std::runtime_error(what), status_(status) {}
  Status status() const { return status_; }

 private:
  Status status_;
};

[[noreturn]] inline void fail(Status status, const std::string& what) {
  throw Error(status, what);
}

// Dense expansion and dense-reference paths refuse above this many factor
// qubits; 2^10 keeps every dense object comfortably in memory.
inline constexpr int kDenseCap = 10;

// Full-state simulation cap (data + ancilla qubits).
inline constexpr int kFullSimCap = 24;

// dense_unitary cap: 2^12 x 2^12 is the largest matrix worth materializing.
inline constexpr int kDenseUnitaryCap = 12;

}  // namespace qkron
