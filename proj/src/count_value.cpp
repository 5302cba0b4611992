#include "molscope/count_value.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

namespace molscope {

double log_of(const BigInt& v) {
  if (v <= 0) return -std::numeric_limits<double>::infinity();
  const std::size_t bits = boost::multiprecision::msb(v) + 1;
  if (bits <= 1000) return std::log(v.convert_to<double>());
  const std::size_t shift = bits - 64;
  const BigInt top = v >> shift;
  return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

double CountValue::log_value() const {
  if (is_exact()) return log_of(exact_value());
  return std::get<double>(value_);
}

std::string CountValue::to_string() const {
  if (is_exact()) return exact_value().str();
  std::ostringstream os;
  os << "nats:" << std::setprecision(17) << std::get<double>(value_);
  return os.str();
}

bool log_le(const CountValue& count, double bound, double tol) {
  return count.log_value() <= bound + tol;
}

bool log_ge(const CountValue& count, double bound, double tol) {
  return count.log_value() >= bound - tol;
}

}  // namespace molscope
