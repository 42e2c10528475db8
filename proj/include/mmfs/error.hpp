#pragma once

#include <stdexcept>
#include <string>

namespace mmfs {

// Base of every error the library throws. Callers that only care about
// "something numerical went wrong" catch this.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class SingularMatrix : public Error {
 public:
  using Error::Error;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

class CoincidentPoints : public Error {
 public:
  using Error::Error;
};

class NonPositiveRadius : public Error {
 public:
  using Error::Error;
};

class SourceOutsideObstacle : public Error {
 public:
  using Error::Error;
};

class PointInsideObstacle : public Error {
 public:
  using Error::Error;
};

class DegenerateFit : public Error {
 public:
  using Error::Error;
};

// Configuration problems; `field` names the offending "section.key".
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& what)
      : Error(field.empty() ? what : field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace mmfs
