#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace molscope {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The rule a rejected object violates.
enum class Rule {
  LatinRow,          // a symbol repeats within a row
  LatinColumn,       // a symbol repeats within a column
  NotOrthogonal,     // two squares/columns repeat an ordered pair
  NotGerechte,       // a symbol repeats within a region
  TooManySquares,    // k > n-1 squares in a MOLS system
  UnbalancedRegions, // a region does not have exactly n cells
  OrthArray,         // two columns of an orthogonal array are not orthogonal
  NearlyOrthArray,   // a nearly orthogonal array breaks its column rules
  Transversal,       // a cell set is not a transversal
};

/// Human-readable name of the definition a rule belongs to.
std::string_view rule_definition(Rule rule);

/// First violation found under the fixed scan order. Index fields that do
/// not apply to a rule are -1.
struct Violation {
  Rule rule;
  int first = -1;
  int second = -1;
  int symbol = -1;
};

class ValidationError : public Error {
 public:
  ValidationError(Violation v, const std::string& what)
      : Error(what), violation_(v) {}
  const Violation& violation() const noexcept { return violation_; }

 private:
  Violation violation_;
};

class OrderMismatch : public Error {
 public:
  OrderMismatch(int a, int b)
      : Error("order mismatch: " + std::to_string(a) + " vs " + std::to_string(b)) {}
};

class LengthMismatch : public Error {
 public:
  using Error::Error;
};

class LimitExceeded : public Error {
 public:
  using Error::Error;
};

class InvalidParams : public Error {
 public:
  using Error::Error;
};

class NotPerfectSquare : public InvalidParams {
 public:
  explicit NotPerfectSquare(int n)
      : InvalidParams("order " + std::to_string(n) + " is not a perfect square") {}
};

class NotATransversal : public Error {
 public:
  using Error::Error;
};

class TranslatesNotDisjoint : public Error {
 public:
  using Error::Error;
};

class NotFoundWithinLimit : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace molscope
