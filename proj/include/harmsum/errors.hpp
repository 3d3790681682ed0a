#pragma once

#include <stdexcept>
#include <string>

namespace harmsum {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonInvertible : public Error {
 public:
  using Error::Error;
};

class NotDivisible : public Error {
 public:
  using Error::Error;
};

/// A closed form was asked to evaluate at a pole (x ≡ 1 mod p).
class SingularPoint : public Error {
 public:
  using Error::Error;
};

class UnsupportedPrime : public Error {
 public:
  using Error::Error;
};

class InvalidBase : public Error {
 public:
  using Error::Error;
};

/// A direct summation would exceed its configured term budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class PrecisionExhausted : public Error {
 public:
  using Error::Error;
};

/// Tracked p-adic precision is too low for the requested reduction.
class PrecisionLoss : public Error {
 public:
  using Error::Error;
};

class IncompleteFactor : public Error {
 public:
  using Error::Error;
};

/// J_{p^s}(x) for x outside the p-th power classes reachable from a search.
class UnreachableBase : public Error {
 public:
  using Error::Error;
};

}  // namespace harmsum
