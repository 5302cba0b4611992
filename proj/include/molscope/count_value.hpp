#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include <boost/multiprecision/cpp_int.hpp>

namespace molscope {

using BigInt = boost::multiprecision::cpp_int;

/// Natural log of a nonnegative big integer; -inf for zero.
double log_of(const BigInt& v);

/// Either an exact count from enumeration or a natural-log real from a bound.
class CountValue {
 public:
  static CountValue exact(BigInt v) { return CountValue(std::move(v)); }
  static CountValue log_domain(double nats) { return CountValue(nats); }

  bool is_exact() const noexcept { return std::holds_alternative<BigInt>(value_); }
  /// Throws std::bad_variant_access on a log-domain value.
  const BigInt& exact_value() const { return std::get<BigInt>(value_); }
  /// Natural log of the value; for exact zero this is -inf.
  double log_value() const;
  /// Decimal digits for exact values, "nats:<value>" otherwise.
  std::string to_string() const;

  friend bool operator==(const CountValue&, const CountValue&) = default;

 private:
  explicit CountValue(BigInt v) : value_(std::move(v)) {}
  explicit CountValue(double nats) : value_(nats) {}
  std::variant<BigInt, double> value_;
};

/// ln(count) <= bound + tol.
bool log_le(const CountValue& count, double bound, double tol);
/// ln(count) >= bound - tol.
bool log_ge(const CountValue& count, double bound, double tol);

/// Exact counter with a 64-bit fast path; spills into a BigInt on overflow.
class BigCounter {
 public:
  void add(std::uint64_t v) {
    if (__builtin_add_overflow(low_, v, &low_)) {
      high_ += BigInt(1) << 64;
    }
  }
  void increment() { add(1); }
  void add(const BigCounter& o) {
    add(o.low_);
    high_ += o.high_;
  }
  BigInt value() const { return high_ + low_; }

 private:
  std::uint64_t low_ = 0;
  BigInt high_ = 0;
};

}  // namespace molscope
