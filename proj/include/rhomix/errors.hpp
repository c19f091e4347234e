#pragma once

#include <stdexcept>

namespace rhomix {

// Base for everything this library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A value failed its type invariant (shape, finiteness, normalization, ...).
// The message names the violated invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class NotSquareError : public Error {
 public:
  using Error::Error;
};

class NotHermitianError : public Error {
 public:
  using Error::Error;
};

class RankDeficientError : public Error {
 public:
  using Error::Error;
};

class TargetTooShortError : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRangeError : public Error {
 public:
  using Error::Error;
};

class NotMajorizedError : public Error {
 public:
  using Error::Error;
};

class NotUnitaryError : public Error {
 public:
  using Error::Error;
};

class PreconditionViolatedError : public Error {
 public:
  using Error::Error;
};

class PureStateError : public Error {
 public:
  using Error::Error;
};

class TooFewPointsError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatchError : public Error {
 public:
  using Error::Error;
};

class ZeroWeightError : public Error {
 public:
  using Error::Error;
};

class NonConvergentError : public Error {
 public:
  using Error::Error;
};

class NotCertifiedError : public Error {
 public:
  using Error::Error;
};

}  // namespace rhomix
