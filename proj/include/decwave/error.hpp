#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace decwave {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. `line()` is 1-based; 0 means "no specific line".
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A mesh that violates the simplicial-complex invariants.
class MeshError : public ParseError {
 public:
  using ParseError::ParseError;
};

class DegenerateTriangleError : public MeshError {
 public:
  using MeshError::MeshError;
};

class NonManifoldError : public MeshError {
 public:
  using MeshError::MeshError;
};

/// Operator assembly failed (nonpositive dual area, zero primal length, ...).
class AssemblyError : public Error {
 public:
  using Error::Error;
};

/// The field became non-finite or exceeded the divergence threshold.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, std::size_t step)
      : Error("step " + std::to_string(step) + ": " + what), step_(step) {}

  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

/// The iterative linear solver did not reach its tolerance.
class SolverFailure : public Error {
 public:
  SolverFailure(const std::string& what, double residual)
      : Error(what + " (relative residual " + std::to_string(residual) + ")"), residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace decwave
