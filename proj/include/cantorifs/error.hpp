#pragma once

#include <stdexcept>
#include <string>

namespace cantorifs {

// Every failure raised by the library derives from Error so callers (the CLI
// in particular) can map faults to exit codes in one place.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class RangeError : public Error {
 public:
  using Error::Error;
};

class ResourceError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A hypothesis of a construction or fixed-interval argument does not hold.
class HypothesisError : public Error {
 public:
  using Error::Error;
};

/// The nested-image limit collapsed to (nearly) a point.
class DegenerateHoleError : public Error {
 public:
  using Error::Error;
};

/// No case of the gap-finding induction applies to an interval.
class ClassificationError : public Error {
 public:
  using Error::Error;
};

/// Raised by a construction stage; `stage()` names the stage that failed.
class StageError : public Error {
 public:
  StageError(std::string stage, const std::string& what)
      : Error(stage + ": " + what), stage_(std::move(stage)) {}
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

}  // namespace cantorifs
