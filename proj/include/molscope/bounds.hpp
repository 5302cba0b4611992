#pragma once

// Upper bounds on counts of MOLS extensions and k-MOLS, and the asymptotic
// reference formulas they are compared with. Every value is a natural log of
// a count ("nats").

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "molscope/array_forms.hpp"
#include "molscope/quadrature.hpp"

namespace molscope {

inline constexpr double kDefaultTolerance = 1e-9;

struct BoundValue {
  std::string name;
  double nats = 0;
  /// Which result the value comes from, e.g. "extension-bound".
  std::string source;
  /// Asymptotic reference with o(1) terms dropped; not a finite-n bound.
  bool asymptotic_only = false;
};

struct BoundReport {
  std::int64_t n = 0;
  int k = 0;
  std::vector<BoundValue> values;
  /// Named inequalities evaluated while building the report.
  std::vector<std::pair<std::string, bool>> checks;
  /// Largest error estimate of any single quadrature (each is <= tol).
  double quadrature_error = 0;
  /// Error estimate carried into the reported values (weights included).
  double propagated_error = 0;

  /// Throws InvalidParams for an unknown name.
  const BoundValue& get(std::string_view name) const;
  bool all_checks_pass() const;
};

struct IntegralResult {
  double value = 0;
  double error = 0;
  /// True when 2 <= d <= n, the range where closed_form_estimate applies.
  bool in_estimate_domain = false;
};

/// I_d(n) = int_0^1 log(1 + (n-1) t^d) dt. Needs n >= 2, d >= 1.
IntegralResult integral_I_detail(std::int64_t n, int d, double tol = kDefaultTolerance);
double integral_I(std::int64_t n, int d, double tol = kDefaultTolerance);

/// log((n-1)/e^d) + d/(n-1)^(1/d) + 3/(d (n-1)^(1/d)), for 2 <= d <= n.
double closed_form_estimate(std::int64_t n, int d);

/// n^2 I_{k+2}(n), for 0 <= k <= n-2.
double extension_bound_mols(std::int64_t n, int k, double tol = kDefaultTolerance);

/// Sum over cells of int_0^1 log(1 + (r+c) t^(d-1) + (n-r-c-1) t^d) dt, for an
/// array of width d >= 3. Cells with equal (r, c) are integrated once.
double extension_bound_general(const CellProfile& profile, int d, double tol = kDefaultTolerance);
QuadratureResult extension_bound_general_detail(const CellProfile& profile, int d,
                                                double tol = kDefaultTolerance);

/// Bounds on log L^(k)(n), 1 <= k <= n-1: summed quadrature, its explicit
/// finite-n estimate, the three growth regimes, the trivial bound and the
/// fixed-k reference count.
BoundReport mols_count_bound(std::int64_t n, int k, double tol = kDefaultTolerance);

/// c(beta) = 1 - (1/beta) int_0^beta x (1 - e^(-1/x)) dx, beta > 0.
double c_beta(double beta, double tol = kDefaultTolerance);

/// Reference growth formulas with o(1) terms dropped; display only.
BoundReport reference_asymptotics(std::int64_t n, int k);

/// Extension bound for k mutually orthogonal Sudoku squares of order n = m^2
/// (m >= 2), with the split into n^2 I_{k+3} plus a correction term.
BoundReport sudoku_extension_bound(std::int64_t n, int k, double tol = kDefaultTolerance);

/// The cell profile of the m x m box partition: r = c = m - 1 everywhere.
CellProfile sudoku_profile(int n);

/// Sum of log i for i <= m; lgamma beyond 10^6.
double log_factorial(std::uint64_t m);

}  // namespace molscope
