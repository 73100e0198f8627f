#pragma once

#include <stdexcept>
#include <string>

namespace trajtopo {

// Error categories map one-to-one onto CLI exit codes.
enum class ErrorKind {
  Usage = 1,          // bad flags / malformed request
  Validation = 2,     // bad data: invalid mesh, file, trajectory, ...
  NonConvergence = 3, // solver hit its round cap
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, std::string msg)
      : std::runtime_error(std::move(msg)), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

inline Error validation_error(std::string msg) {
  return Error(ErrorKind::Validation, std::move(msg));
}

} // namespace trajtopo
