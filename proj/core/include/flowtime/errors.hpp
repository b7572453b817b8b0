#pragma once

#include <stdexcept>
#include <string>

namespace flowtime {

// Error kinds map one-to-one onto CLI exit codes and the "kind" field of the
// machine-readable error JSON emitted on stderr.
enum class ErrorKind {
  Parse = 2,
  Validation = 3,
  Domain = 4,
  Infeasible = 5,
  NoRoute = 6,
  Solver = 7,
  Internal = 8,
  Io = 9,
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, std::string message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }
  const char* kind_name() const {
    switch (kind_) {
      case ErrorKind::Parse: return "parse";
      case ErrorKind::Validation: return "validation";
      case ErrorKind::Domain: return "domain";
      case ErrorKind::Infeasible: return "infeasible";
      case ErrorKind::NoRoute: return "no-route";
      case ErrorKind::Solver: return "solver";
      case ErrorKind::Internal: return "internal";
      case ErrorKind::Io: return "io";
    }
    return "unknown";
  }

private:
  ErrorKind kind_;
};

struct ParseError : Error {
  explicit ParseError(std::string m) : Error(ErrorKind::Parse, std::move(m)) {}
};
struct ValidationError : Error {
  explicit ValidationError(std::string m) : Error(ErrorKind::Validation, std::move(m)) {}
};
struct DomainError : Error {
  explicit DomainError(std::string m) : Error(ErrorKind::Domain, std::move(m)) {}
};
struct InfeasibleError : Error {
  explicit InfeasibleError(std::string m) : Error(ErrorKind::Infeasible, std::move(m)) {}
};
struct NoRouteError : Error {
  explicit NoRouteError(std::string m) : Error(ErrorKind::NoRoute, std::move(m)) {}
};
struct SolverError : Error {
  explicit SolverError(std::string m) : Error(ErrorKind::Solver, std::move(m)) {}
};
struct InternalError : Error {
  explicit InternalError(std::string m) : Error(ErrorKind::Internal, std::move(m)) {}
};
struct IoError : Error {
  explicit IoError(std::string m) : Error(ErrorKind::Io, std::move(m)) {}
};

}  // namespace flowtime
