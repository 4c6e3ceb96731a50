#pragma once

#include <stdexcept>
#include <string>

namespace axsym {

// Raised when a caller violates a documented precondition or hands in
// data that fails validation (bad norms, empty samples, malformed configs).
class validation_error : public std::runtime_error {
 public:
  explicit validation_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised for filesystem and format problems while reading or writing artifacts.
class io_error : public std::runtime_error {
 public:
  explicit io_error(const std::string& msg) : std::runtime_error(msg) {}
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw validation_error(msg);
}

}  // namespace axsym
