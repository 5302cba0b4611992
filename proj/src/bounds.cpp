#include "molscope/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "molscope/errors.hpp"

namespace molscope {
namespace {

double binom2(double m) { return m * (m - 1) / 2.0; }

// Where (n-1) t^d crosses 1; the integrands change from ~linear to ~log there.
double crossover(double n, int d) { return std::pow(n - 1.0, -1.0 / d); }

std::vector<double> split_points(double t0) {
  if (t0 > 0 && t0 < 1) return {0.0, t0, 1.0};
  return {0.0, 1.0};
}

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidParams(what);
}

}  // namespace

const BoundValue& BoundReport::get(std::string_view name) const {
  for (const auto& v : values)
    if (v.name == name) return v;
  throw InvalidParams("no bound value named " + std::string(name));
}

bool BoundReport::all_checks_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.second; });
}

double log_factorial(std::uint64_t m) {
  if (m > 1000000) return std::lgamma(static_cast<double>(m) + 1.0);
  long double s = 0;
  for (std::uint64_t i = 2; i <= m; ++i) s += std::log(static_cast<long double>(i));
  return static_cast<double>(s);
}

IntegralResult integral_I_detail(std::int64_t n, int d, double tol) {
  require(n >= 2 && d >= 1, "integral_I needs n >= 2 and d >= 1");
  require(tol > 0, "tolerance must be positive");
  const double a = static_cast<double>(n - 1);
  const auto f = [a, d](double t) { return std::log1p(a * std::pow(t, d)); };
  const auto q = adaptive_simpson_split(f, split_points(crossover(static_cast<double>(n), d)), tol);
  return {q.value, q.error, d >= 2 && d <= n};
}

double integral_I(std::int64_t n, int d, double tol) { return integral_I_detail(n, d, tol).value; }

double closed_form_estimate(std::int64_t n, int d) {
  require(n >= 2 && d >= 2 && d <= n, "closed_form_estimate needs 2 <= d <= n");
  const double a = static_cast<double>(n - 1);
  const double root = std::pow(a, 1.0 / d);
  return std::log(a) - d + d / root + 3.0 / (d * root);
}

double extension_bound_mols(std::int64_t n, int k, double tol) {
  require(k >= 0 && k <= n - 2, "extension_bound_mols needs 0 <= k <= n-2");
  const double n2 = static_cast<double>(n) * static_cast<double>(n);
  return n2 * integral_I(n, k + 2, tol);
}

QuadratureResult extension_bound_general_detail(const CellProfile& profile, int d, double tol) {
  const int n = profile.order;
  const std::size_t cells = static_cast<std::size_t>(n) * n;
  require(d >= 3, "extension_bound_general needs d >= 3");
  require(n >= 1 && profile.r.size() == cells && profile.c.size() == cells,
          "cell profile must have n^2 entries");

  std::map<std::pair<int, int>, int> buckets;
  for (std::size_t l = 0; l < cells; ++l) {
    const int r = profile.r[l];
    const int c = profile.c[l];
    require(r >= 0 && c >= 0 && r + c <= n - 1, "cell profile entry out of range");
    ++buckets[{r, c}];
  }

  // Buckets are summed in sorted (r, c) order.
  QuadratureResult total;
  for (const auto& [rc, mult] : buckets) {
    const double low = rc.first + rc.second;
    const double high = n - low - 1.0;
    const auto f = [=](double t) {
      const double p = std::pow(t, d - 1);
      return std::log1p(low * p + high * p * t);
    };
    const auto q = adaptive_simpson_split(f, split_points(n >= 2 ? crossover(n, d) : 1.0), tol);
    total.value += mult * q.value;
    total.error += mult * q.error;
    total.evaluations += q.evaluations;
    total.converged = total.converged && q.converged;
  }
  return total;
}

double extension_bound_general(const CellProfile& profile, int d, double tol) {
  return extension_bound_general_detail(profile, d, tol).value;
}

double c_beta(double beta, double tol) {
  require(beta > 0 && std::isfinite(beta), "c_beta needs beta > 0");
  require(tol > 0, "tolerance must be positive");
  // x (1 - e^(-1/x)) extends continuously by 0 at x = 0.
  const auto f = [](double x) { return x <= 0 ? 0.0 : -x * std::expm1(-1.0 / x); };
  std::vector<double> points{0.0};
  if (beta > 1) points.push_back(1.0);
  points.push_back(beta);
  const auto q = adaptive_simpson_split(f, points, tol * beta);
  double c = 1.0 - q.value / beta;
  const double slack = q.error / beta + 4 * std::numeric_limits<double>::epsilon();
  if (c < -slack || c > 1.0 + slack) throw Error("c_beta left [0,1]: quadrature failure");
  return std::clamp(c, 0.0, 1.0);
}

BoundReport mols_count_bound(std::int64_t n, int k, double tol) {
  require(n >= 2 && k >= 1 && k <= n - 1, "mols_count_bound needs 1 <= k <= n-1");
  BoundReport rep;
  rep.n = n;
  rep.k = k;
  const double nd = static_cast<double>(n);
  const double n2 = nd * nd;
  const double logn = std::log(nd);
  const double log_a = std::log(nd - 1.0);

  double summed = 0;
  for (int d = 2; d <= k + 1; ++d) {
    const auto q = integral_I_detail(n, d, tol);
    summed += q.value;
    rep.quadrature_error = std::max(rep.quadrature_error, q.error);
    rep.propagated_error += n2 * q.error;
  }
  const double summed_bound = n2 * summed;
  const double explicit_per_cell =
      k * log_a - (binom2(k + 2) - 1.0) + binom2(k + 4) * std::pow(nd - 1.0, -1.0 / (k + 2));
  const double explicit_bound = n2 * explicit_per_cell;
  const double regime_small =
      n2 * (k * logn - binom2(k + 2) + 1.0 + double(k) * k * std::pow(nd, -1.0 / (k + 2)));
  const double beta = k / logn;
  const double regime_linear = c_beta(beta, tol) * k * n2 * logn;
  const double regime_large = 0.5 * (std::log(double(k)) - std::log(logn)) * n2 * logn * logn;
  const double trivial = k * n2 * logn;
  const double reference = n2 * (k * logn - binom2(k + 2) + 1.0);

  rep.values = {
      {"summed_quadrature", summed_bound, "mols-count-bound:summed-extension-integrals", false},
      {"explicit_estimate", explicit_bound, "mols-count-bound:summed-integral-estimates", false},
      {"regime_small_k", regime_small, "mols-count-bound:k=o(log n)", true},
      {"regime_linear_k", regime_linear, "mols-count-bound:k=beta*log n", true},
      {"regime_large_k", regime_large, "mols-count-bound:k=omega(log n)", true},
      {"trivial", trivial, "trivial:k*n^2*log n", false},
      {"reference_count", reference, "fixed-k-asymptotic-count", true},
  };
  rep.checks = {
      {"summed_quadrature <= explicit_estimate", summed_bound <= explicit_bound + rep.propagated_error},
      {"summed_quadrature <= trivial", summed_bound <= trivial + rep.propagated_error},
  };
  return rep;
}

BoundReport reference_asymptotics(std::int64_t n, int k) {
  require(n >= 2 && k >= 0, "reference_asymptotics needs n >= 2, k >= 0");
  BoundReport rep;
  rep.n = n;
  rep.k = k;
  const double nd = static_cast<double>(n);
  const double n2 = nd * nd;
  const double logn = std::log(nd);
  rep.values = {
      {"latin_squares", n2 * (logn - 2.0), "asymptotic:latin-square-count", true},
      {"kmols_count", n2 * (k * logn - binom2(k + 2) + 1.0), "asymptotic:k-mols-count", true},
      {"average_extensions", n2 * (logn - (k + 2.0)), "asymptotic:average-extensions", true},
      {"max_mates_transversal_route", n2 * (logn - 2.0 - 1.0 / std::exp(1.0)),
       "asymptotic:mates-via-transversal-bound", true},
  };
  return rep;
}

CellProfile sudoku_profile(int n) {
  const auto m = exact_sqrt(n);
  if (!m) throw NotPerfectSquare(n);
  const std::size_t cells = static_cast<std::size_t>(n) * n;
  return {n, std::vector<int>(cells, *m - 1), std::vector<int>(cells, *m - 1)};
}

BoundReport sudoku_extension_bound(std::int64_t n, int k, double tol) {
  require(n >= 1 && n <= std::numeric_limits<int>::max(), "order out of range");
  const auto m = exact_sqrt(static_cast<int>(n));
  if (!m) throw NotPerfectSquare(static_cast<int>(n));
  require(*m >= 2 && k >= 0, "sudoku_extension_bound needs n = m^2 with m >= 2 and k >= 0");

  BoundReport rep;
  rep.n = n;
  rep.k = k;
  const double nd = static_cast<double>(n);
  const double n2 = nd * nd;
  const int d = k + 3;

  const auto general = extension_bound_general_detail(sudoku_profile(static_cast<int>(n)), d, tol);
  const auto main = integral_I_detail(n, d, tol);
  const double lift = 2.0 * (*m - 1);
  const auto corr_f = [=](double t) {
    const double p = std::pow(t, d - 1);
    return std::log1p(lift * (1.0 - t) * p / (1.0 + (nd - 1.0) * p * t));
  };
  const auto corr = adaptive_simpson_split(corr_f, split_points(crossover(nd, d)), tol);
  const double corr_cap = 2.0 * std::log(nd) / (d * std::sqrt(nd - 1.0));

  rep.quadrature_error = std::max({general.error / n2, main.error, corr.error});
  rep.propagated_error = general.error + n2 * (main.error + corr.error);

  const double main_part = n2 * main.value;
  const double corr_part = n2 * corr.value;
  rep.values = {
      {"general_bound", general.value, "gerechte-extension-bound:sudoku-profile", false},
      {"main_term", main_part, "sudoku-extension:n^2*I_{k+3}", false},
      {"correction_term", corr_part, "sudoku-extension:correction-integral", false},
      {"correction_cap", n2 * corr_cap, "sudoku-extension:2 log n/((k+3) sqrt(n-1))", false},
      {"decomposed_bound", main_part + n2 * corr_cap, "sudoku-extension:main+correction-cap", false},
  };
  const double slack = rep.propagated_error + tol;
  rep.checks = {
      {"general_bound <= main_term + correction_cap", general.value <= main_part + n2 * corr_cap + slack},
      {"general_bound == main_term + correction_term",
       std::abs(general.value - (main_part + corr_part)) <= slack},
      {"0 <= correction_term <= correction_cap", corr_part >= -slack && corr_part <= n2 * corr_cap + slack},
  };
  return rep;
}

}  // namespace molscope
