#pragma once

#include <stdexcept>
#include <string>

namespace charfact {

/// Error categories surfaced by the library. The CLI maps every kind except
/// ParseError to exit status 3.
enum class ErrorKind {
  DomainViolation,
  NonConvergent,
  ResourceLimit,
  PoleAt,
  GridTooCoarse,
  NotInvertible,
  NotEnoughZeros,
  PositivityRequired,
  ParseError,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class DomainViolation : public Error {
 public:
  explicit DomainViolation(const std::string& what) : Error(ErrorKind::DomainViolation, what) {}
};

class NonConvergent : public Error {
 public:
  explicit NonConvergent(const std::string& what) : Error(ErrorKind::NonConvergent, what) {}
};

class ResourceLimit : public Error {
 public:
  explicit ResourceLimit(const std::string& what) : Error(ErrorKind::ResourceLimit, what) {}
};

class PoleAt : public Error {
 public:
  PoleAt(double re, double im, const std::string& what)
      : Error(ErrorKind::PoleAt, what), re_(re), im_(im) {}
  double pole_real() const noexcept { return re_; }
  double pole_imag() const noexcept { return im_; }

 private:
  double re_, im_;
};

class GridTooCoarse : public Error {
 public:
  explicit GridTooCoarse(const std::string& what) : Error(ErrorKind::GridTooCoarse, what) {}
};

class NotInvertible : public Error {
 public:
  explicit NotInvertible(const std::string& what) : Error(ErrorKind::NotInvertible, what) {}
};

class NotEnoughZeros : public Error {
 public:
  explicit NotEnoughZeros(const std::string& what) : Error(ErrorKind::NotEnoughZeros, what) {}
};

class PositivityRequired : public Error {
 public:
  explicit PositivityRequired(const std::string& what)
      : Error(ErrorKind::PositivityRequired, what) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(ErrorKind::ParseError, what) {}
};

}  // namespace charfact
