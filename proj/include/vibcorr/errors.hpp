#pragma once

#include <stdexcept>
#include <string>

namespace vibcorr {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotHermitian : public Error {
 public:
  using Error::Error;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

class NotDensityMatrix : public Error {
 public:
  using Error::Error;
};

class InvalidMatrix : public Error {
 public:
  using Error::Error;
};

class UnknownLabel : public Error {
 public:
  explicit UnknownLabel(const std::string& label)
      : Error("unknown tensor factor label '" + label + "'"), label_(label) {}
  const std::string& label() const { return label_; }

 private:
  std::string label_;
};

class DimMismatch : public Error {
 public:
  using Error::Error;
};

class ReductionMismatch : public Error {
 public:
  ReductionMismatch(double deviation, double limit)
      : Error("collective-mode reduction mismatch: deviation " + std::to_string(deviation) +
              " exceeds " + std::to_string(limit)),
        deviation_(deviation) {}
  double deviation() const { return deviation_; }

 private:
  double deviation_;
};

class DegenerateDimer : public Error {
 public:
  using Error::Error;
};

class StepTooLarge : public Error {
 public:
  StepTooLarge(double drift, double time_fs)
      : Error("RK4 trace drift " + std::to_string(drift) + " at t = " + std::to_string(time_fs) +
              " fs exceeds 1e-6"),
        drift_(drift) {}
  double drift() const { return drift_; }

 private:
  double drift_;
};

class VacuumExpectation : public Error {
 public:
  using Error::Error;
};

class NotConverged : public Error {
 public:
  NotConverged(std::string observable, double deviation)
      : Error("observable '" + observable + "' not converged under truncation increase: deviation " +
              std::to_string(deviation)),
        observable_(std::move(observable)),
        deviation_(deviation) {}
  const std::string& observable() const { return observable_; }
  double deviation() const { return deviation_; }

 private:
  std::string observable_;
  double deviation_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error("parse error at line " + std::to_string(line) + ", column " + std::to_string(column) +
              ": " + what),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& what)
      : Error("invalid field '" + field + "': " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace vibcorr
