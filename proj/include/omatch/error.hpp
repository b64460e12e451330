#pragma once

#include <stdexcept>
#include <string>

namespace omatch {

enum class ErrorKind {
  range,
  invalid_word,
  not_collectable,
  size_mismatch,
  invalid_partition,
  overlap,
  order_violation,
  cap_exceeded,
  solver_mismatch,
  unbounded_family,
  not_partite,
  geometry_mismatch,
  invalid_trace,
  not_mismatch,
  insufficient_data,
  invalid_config,
  internal,
};

const char* to_string(ErrorKind kind);

// Single exception type for all domain failures; inspect kind() to branch.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace omatch
