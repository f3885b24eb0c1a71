#pragma once

#include <stdexcept>
#include <string>

namespace pslab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An elementary function or division was evaluated outside its domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Inputs whose metric signatures or jet orders do not line up.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A frame construction or linear solve hit a degenerate configuration.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

/// The induced metric or a frame is degenerate at a surface point.
class SingularPointError : public Error {
 public:
  SingularPointError(const std::string& what, double s, double t)
      : Error(what + " at (" + std::to_string(s) + ", " + std::to_string(t) + ")"), s_(s), t_(t) {}
  double s() const { return s_; }
  double t() const { return t_; }

 private:
  double s_;
  double t_;
};

/// Curve DSL or curve-spec parse failure. position is 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, int position, int line = 0)
      : Error(format(message, position, line)), message_(message), position_(position), line_(line) {}
  const std::string& message() const { return message_; }
  int position() const { return position_; }
  int line() const { return line_; }

 private:
  static std::string format(const std::string& m, int pos, int line) {
    if (line > 0) return "line " + std::to_string(line) + ", position " + std::to_string(pos) + ": " + m;
    return "position " + std::to_string(pos) + ": " + m;
  }
  std::string message_;
  int position_;
  int line_;
};

}  // namespace pslab
