#include "molscope/construct.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "molscope/bounds.hpp"

namespace molscope {
namespace {

int resolve_limit(std::optional<int> limit) { return limit.value_or(kConstructionOrderLimit); }

void check_limit(std::int64_t order, std::optional<int> limit, const char* what) {
  if (order > resolve_limit(limit))
    throw LimitExceeded(std::string(what) + ": order " + std::to_string(order) + " exceeds limit " +
                        std::to_string(resolve_limit(limit)));
}

}  // namespace

GroupSpec GroupSpec::make(std::vector<int> factors) {
  for (int m : factors)
    if (m < 2) throw InvalidParams("group factors must be >= 2");
  return GroupSpec{std::move(factors)};
}

std::int64_t GroupSpec::order() const {
  std::int64_t n = 1;
  for (int m : factors) {
    if (n > std::numeric_limits<int>::max() / m) return std::numeric_limits<std::int64_t>::max();
    n *= m;
  }
  return n;
}

std::string GroupSpec::name() const {
  if (factors.empty()) return "Z1";
  std::string s;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) s += 'x';
    s += 'Z' + std::to_string(factors[i]);
  }
  return s;
}

LatinSquare cayley_table(const GroupSpec& g, std::optional<int> order_limit) {
  for (int m : g.factors)
    if (m < 2) throw InvalidParams("group factors must be >= 2");
  const std::int64_t order = g.order();
  check_limit(order, order_limit, "cayley_table");
  const int n = static_cast<int>(order);

  std::vector<int> cells(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      // Add digit by digit, least significant factor last in the list.
      int x = a, y = b, sum = 0, place = 1;
      for (auto it = g.factors.rbegin(); it != g.factors.rend(); ++it) {
        const int m = *it;
        sum += ((x % m + y % m) % m) * place;
        x /= m;
        y /= m;
        place *= m;
      }
      cells[a * n + b] = sum;
    }
  }
  return validate_latin(Square(n, std::move(cells)));
}

LatinSquare kronecker(const LatinSquare& a, const LatinSquare& b, std::optional<int> order_limit) {
  const int n1 = a.order();
  const int n2 = b.order();
  check_limit(static_cast<std::int64_t>(n1) * n2, order_limit, "kronecker");
  const int n = n1 * n2;
  std::vector<int> cells(static_cast<std::size_t>(n) * n);
  for (int i1 = 0; i1 < n1; ++i1)
    for (int i2 = 0; i2 < n2; ++i2)
      for (int j1 = 0; j1 < n1; ++j1)
        for (int j2 = 0; j2 < n2; ++j2)
          cells[(i1 * n2 + i2) * n + (j1 * n2 + j2)] = a.at(i1, j1) * n2 + b.at(i2, j2);
  return validate_latin(Square(n, std::move(cells)));
}

LatinSquare power(const LatinSquare& l, int k, std::optional<int> order_limit) {
  if (k < 1) throw InvalidParams("power needs k >= 1");
  std::int64_t order = 1;
  for (int i = 0; i < k; ++i) {
    order *= l.order();
    check_limit(order, order_limit, "power");
  }
  LatinSquare out = l;
  for (int i = 1; i < k; ++i) out = kronecker(out, l, order_limit);
  return out;
}

TranslateMates translate_mates(const GroupSpec& g, const Transversal& t, std::uint64_t count_to_emit) {
  const LatinSquare table = cayley_table(g);
  const int n = table.order();
  if (t.order() != n || !is_transversal(table, t.cells()))
    throw NotATransversal("cells are not a transversal of the Cayley table of " + g.name());

  // Column j shifted by group element h is column table(j, h).
  std::vector<int> labels(static_cast<std::size_t>(n) * n, -1);
  for (int h = 0; h < n; ++h) {
    for (const Cell& c : t.cells()) {
      int& slot = labels[c.row * n + table.at(c.col, h)];
      if (slot != -1) throw TranslatesNotDisjoint("translates of the transversal overlap");
      slot = h;
    }
  }
  TranslateMates out{RegionPartition(n, labels), {}};
  std::vector<int> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0);
  while (out.mates.size() < count_to_emit) {
    std::vector<int> cells(labels.size());
    for (std::size_t l = 0; l < labels.size(); ++l) cells[l] = sigma[labels[l]];
    out.mates.push_back(validate_latin(Square(n, std::move(cells))));
    if (!check_orthogonal(table, out.mates.back()))
      throw NotATransversal("translate mate is not orthogonal to the Cayley table");
    if (!std::next_permutation(sigma.begin(), sigma.end())) break;
  }
  return out;
}

double prop41_bound(std::int64_t n1, std::int64_t n2, double log_q1, double log_q2) {
  if (n1 < 1 || n2 < 1) throw InvalidParams("prop41_bound needs n1, n2 >= 1");
  const double ninf = -std::numeric_limits<double>::infinity();
  if (log_q1 == ninf || log_q2 == ninf) return ninf;
  const double sq = static_cast<double>(n1) * static_cast<double>(n1);
  const auto u1 = static_cast<std::uint64_t>(n1);
  const auto u2 = static_cast<std::uint64_t>(n2);
  return log_q1 + sq * log_q2 + log_factorial(u1 * u2) - log_factorial(u1) -
         static_cast<double>(n1) * log_factorial(u2);
}

BigInt power_mate_exponent(int m, int k) {
  if (m < 2 || k < 1) throw InvalidParams("power_mate_bound needs m >= 2, k >= 1");
  const BigInt m2 = BigInt(m) * m;
  return (boost::multiprecision::pow(m2, static_cast<unsigned>(k)) - 1) / (m2 - 1);
}

double power_mate_bound(int m, double log_q, int k) {
  const BigInt e = power_mate_exponent(m, k);
  if (log_q == 0) return 0;
  return e.convert_to<double>() * log_q;
}

MateCertificate construct_for_constant(double C, int search_limit, int power_k, const SearchOptions& opts) {
  if (!(C > 0) || !std::isfinite(C)) throw InvalidParams("construct needs C > 0");
  if (power_k < 1) throw InvalidParams("construct needs power >= 1");
  const double log_c = std::log(C);
  std::uint64_t examined = 0;

  for (int m = 2; m <= search_limit; ++m) {
    const double need_log = static_cast<double>(m) * m * log_c;
    // No order-m square has more than (m!)^m mates.
    if (need_log > m * log_factorial(static_cast<std::uint64_t>(m)) + 1e-9) continue;
    BigInt threshold = 1;
    if (need_log > 0) {
      threshold = BigInt(std::ceil(std::exp(need_log) * (1 - 1e-15)));
      if (threshold < 1) threshold = 1;
    }

    SearchOptions count_opts = opts;
    count_opts.cap.reset();
    count_opts.stop_threshold = threshold;
    std::optional<LatinSquare> found;
    CountResult<LatinSquare> found_count;
    for_each_system(partition_rows(m), 1, [&](const NearlyOrthArray& a) {
      ++examined;
      const auto sys = noa_to_system(a);
      const LatinSquare& l = sys.squares()[0];
      auto c = count_mates(l, count_opts);
      if (c.value.exact_value() >= threshold) {
        found = l;
        found_count = std::move(c);
        return false;
      }
      return true;
    });
    if (!found) continue;

    const BigInt& q = found_count.value.exact_value();
    std::int64_t order = 1;
    for (int i = 0; i < power_k; ++i) order *= m;
    const double od = static_cast<double>(order);
    MateCertificate cert{
        "power " + std::to_string(power_k) + " of an order-" + std::to_string(m) + " base square",
        *found,
        m,
        q,
        found_count.exact,
        power_k,
        order,
        power_mate_bound(m, log_of(q), power_k),
        od * od * log_c,
        power_k == 1 ? "enumeration" : "power-mate-bound",
        examined};
    if (cert.log_lower_bound + 1e-9 < cert.target)
      throw Error("certificate bound falls below the target");
    return cert;
  }
  throw NotFoundWithinLimit("no base square of order <= " + std::to_string(search_limit) +
                            " has at least C^(m^2) mates");
}

}  // namespace molscope
