#pragma once

#include <stdexcept>
#include <string>

namespace endolift {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RingMismatch : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// A pair of action matrices failed one of the defining group relations.
class RelationViolation : public Error {
 public:
  using Error::Error;
};

// Isomorphism testing ran out of budget without a verdict.
class Inconclusive : public Error {
 public:
  using Error::Error;
};

class CertificateFailure : public Error {
 public:
  using Error::Error;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace endolift
