#pragma once

#include <stdexcept>
#include <string>

namespace zakharov {

// Exit-code compatible failure classes.
enum class ErrorKind : int {
  precondition = 2,
  non_contraction = 3,
  numerical = 4,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }
  int exit_code() const noexcept { return static_cast<int>(kind_); }

 private:
  ErrorKind kind_;
};

class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& what) : Error(ErrorKind::precondition, what) {}
};

class NonContractionError : public Error {
 public:
  explicit NonContractionError(const std::string& what) : Error(ErrorKind::non_contraction, what) {}
};

class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what) : Error(ErrorKind::numerical, what) {}
};

// Throws PreconditionError with `message` when `ok` is false.
void require(bool ok, const std::string& message);

}  // namespace zakharov
