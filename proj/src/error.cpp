#include "omatch/error.hpp"

namespace omatch {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::range: return "RangeError";
    case ErrorKind::invalid_word: return "InvalidWord";
    case ErrorKind::not_collectable: return "NotCollectable";
    case ErrorKind::size_mismatch: return "SizeMismatch";
    case ErrorKind::invalid_partition: return "InvalidPartition";
    case ErrorKind::overlap: return "Overlap";
    case ErrorKind::order_violation: return "OrderViolation";
    case ErrorKind::cap_exceeded: return "CapExceeded";
    case ErrorKind::solver_mismatch: return "SolverMismatch";
    case ErrorKind::unbounded_family: return "UnboundedFamily";
    case ErrorKind::not_partite: return "NotPartite";
    case ErrorKind::geometry_mismatch: return "GeometryMismatch";
    case ErrorKind::invalid_trace: return "InvalidTrace";
    case ErrorKind::not_mismatch: return "NotMismatch";
    case ErrorKind::insufficient_data: return "InsufficientData";
    case ErrorKind::invalid_config: return "InvalidConfig";
    case ErrorKind::internal: return "InternalError";
  }
  return "Error";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace omatch
