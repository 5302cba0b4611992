#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace molscope {

struct QuadratureResult {
  double value = 0;
  /// Sum of the per-panel Richardson error estimates.
  double error = 0;
  std::uint64_t evaluations = 0;
  /// False if some panel hit the depth cap before meeting its tolerance.
  bool converged = true;
};

inline constexpr int kSimpsonMinDepth = 4;
inline constexpr int kSimpsonMaxDepth = 50;

namespace detail {

template <class F>
void simpson_panel(const F& f, double a, double b, double fa, double fm, double fb, double whole,
                   double tol, int depth, QuadratureResult& acc) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  acc.evaluations += 2;
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  const bool deep_enough = depth >= kSimpsonMinDepth;
  if ((deep_enough && std::abs(delta) <= 15.0 * tol) || depth >= kSimpsonMaxDepth) {
    if (std::abs(delta) > 15.0 * tol) acc.converged = false;
    acc.value += left + right + delta / 15.0;
    acc.error += std::abs(delta) / 15.0;
    return;
  }
  simpson_panel(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1, acc);
  simpson_panel(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1, acc);
}

}  // namespace detail

/// Adaptive Simpson with Richardson correction on [a, b], absolute error
/// target tol. Panels are visited left to right, so the summation order is
/// fixed.
template <class F>
QuadratureResult adaptive_simpson(const F& f, double a, double b, double tol) {
  QuadratureResult acc;
  if (b == a) return acc;
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  acc.evaluations = 3;
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  detail::simpson_panel(f, a, b, fa, fm, fb, whole, tol, 0, acc);
  return acc;
}

/// Integrates over consecutive pieces split at the given interior points,
/// sharing the tolerance in proportion to piece length.
template <class F>
QuadratureResult adaptive_simpson_split(const F& f, std::vector<double> points, double tol) {
  QuadratureResult total;
  const double span = points.back() - points.front();
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    const double a = points[i];
    const double b = points[i + 1];
    if (b <= a) continue;
    const auto part = adaptive_simpson(f, a, b, tol * (b - a) / span);
    total.value += part.value;
    total.error += part.error;
    total.evaluations += part.evaluations;
    total.converged = total.converged && part.converged;
  }
  return total;
}

}  // namespace molscope
