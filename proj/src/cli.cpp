#include "molscope/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <optional>

#include <CLI11.hpp>

#include "molscope/array_forms.hpp"
#include "molscope/bounds.hpp"
#include "molscope/construct.hpp"
#include "molscope/report.hpp"
#include "molscope/search.hpp"
#include "molscope/text_format.hpp"

namespace molscope {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

/// Certification inequalities are compared with this slack in nats.
constexpr double kCheckSlack = 1e-6;
constexpr std::uint64_t kDefaultWitnessCap = 100;

struct Common {
  unsigned threads = 0;
  std::optional<std::uint64_t> cap;
  std::string threshold;
  double tol = kDefaultTolerance;
  std::string emit;
  std::string format = "table";
  bool timings = false;
  std::optional<double> time_budget;
  std::optional<int> order_limit;
};

class BudgetExhausted : public Error {
 public:
  using Error::Error;
};

std::string num(double v) {
  if (std::isinf(v)) return v < 0 ? "-inf" : "inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string ln_of(const BigInt& v) { return "ln " + v.str() + " = " + num(log_of(v)); }

std::optional<int> env_order_limit() {
  const char* raw = std::getenv("MOLSCOPE_LIMIT_N");
  if (!raw || !*raw) return std::nullopt;
  char* end = nullptr;
  const long v = std::strtol(raw, &end, 10);
  if (*end != '\0' || v < 1 || v > 1 << 20) throw InvalidParams("MOLSCOPE_LIMIT_N must be a positive integer");
  return static_cast<int>(v);
}

SearchOptions search_options(const Common& c, bool collect_witnesses) {
  SearchOptions o;
  o.threads = c.threads;
  o.order_limit = c.order_limit;
  if (collect_witnesses) o.cap = c.cap.value_or(kDefaultWitnessCap);
  if (!c.threshold.empty()) {
    BigInt t;
    try {
      t = BigInt(c.threshold);
    } catch (const std::exception&) {
      throw InvalidParams("--threshold must be a nonnegative integer");
    }
    if (t < 0) throw InvalidParams("--threshold must be a nonnegative integer");
    o.stop_threshold = t;
  }
  if (c.time_budget) {
    if (*c.time_budget <= 0) throw InvalidParams("--time-budget must be positive");
    o.time_budget = std::chrono::milliseconds(static_cast<std::int64_t>(*c.time_budget * 1000));
  }
  return o;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

/// Writes numbered witness files into a directory created on first use.
class WitnessSink {
 public:
  WitnessSink(std::string dir, std::string stem) : dir_(std::move(dir)), stem_(std::move(stem)) {}

  bool enabled() const { return !dir_.empty(); }

  void write(const DesignFile& f) {
    if (!enabled()) return;
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) throw IoError("cannot create " + dir_ + ": " + ec.message());
    char name[64];
    std::snprintf(name, sizeof name, "%s-%04zu.txt", stem_.c_str(), ++written_);
    write_text_file(fs::path(dir_) / name, format_design(f));
  }

  void record(ReportDocument& r) const {
    if (!enabled()) return;
    r.note("witness_dir", dir_);
    r.note("witnesses_written", written_);
  }

 private:
  std::string dir_;
  std::string stem_;
  std::size_t written_ = 0;
};

DesignFile system_file(const MolsSystem& sys, bool with_partition) {
  DesignFile f;
  for (const auto& l : sys.squares()) f.squares.push_back(l.square());
  if (with_partition && sys.partition()) f.partition = sys.partition()->as_square();
  return f;
}

std::vector<Cell> cells_of(const Transversal& t) { return {t.cells().begin(), t.cells().end()}; }

// ---------------------------------------------------------------------------
// Loading systems for extension counts and bounds.

struct LoadedSystem {
  NearlyOrthArray array;
  /// False when the input had no partition and rows were assumed.
  bool has_partition;
};

LoadedSystem load_system(const std::string& spec, const std::string& partition_spec,
                         std::optional<int> limit) {
  std::optional<RegionPartition> partition;
  if (!partition_spec.empty()) partition = resolve_partition(partition_spec, limit);

  std::vector<LatinSquare> squares;
  if (!spec.empty() && is_generator_spec(spec)) {
    squares.push_back(validate_latin(resolve_square(spec, limit)));
  } else if (!spec.empty()) {
    DesignFile f = read_design_file(spec);
    if (f.array) {
      if (partition) throw InvalidParams("--partition cannot be combined with an array file");
      if (f.array->nearly)
        return {NearlyOrthArray::validate(f.array->order, f.array->width, std::move(f.array->data)), true};
      auto sys = oa_to_mols(OrthArray::validate(f.array->order, f.array->width, std::move(f.array->data)));
      squares.assign(sys.squares().begin(), sys.squares().end());
    } else {
      for (const auto& s : f.squares) squares.push_back(validate_latin(s));
      if (f.partition) {
        if (partition) throw InvalidParams("partition given both in the file and by --partition");
        partition = RegionPartition(f.partition->order(),
                                    {f.partition->cells().begin(), f.partition->cells().end()});
      }
    }
  }
  if (squares.empty() && !partition) throw InvalidParams("need --system with squares, or --partition");
  const int n = squares.empty() ? partition->order() : squares[0].order();
  const bool has_partition = partition.has_value();
  auto sys = validate_mols(n, std::move(squares), partition ? std::move(partition) : partition_rows(n));
  return {system_to_noa(sys), has_partition};
}

// ---------------------------------------------------------------------------
// verify

struct VerifyOutcome {
  std::string object;
};

VerifyOutcome verify_design(const DesignFile& f) {
  if (f.array) {
    const auto& a = *f.array;
    const std::string dims = "(" + std::to_string(a.order) + "," + std::to_string(a.width) + ")";
    if (a.nearly) {
      NearlyOrthArray::validate(a.order, a.width, a.data);
      return {"NOA" + dims};
    }
    OrthArray::validate(a.order, a.width, a.data);
    return {"OA" + dims};
  }
  if (f.squares.empty() && !f.partition) throw ParseError("no squares or arrays in input");

  std::vector<LatinSquare> squares;
  for (const auto& s : f.squares) squares.push_back(validate_latin(s));
  std::optional<RegionPartition> partition;
  if (f.partition)
    partition = RegionPartition(f.partition->order(), {f.partition->cells().begin(), f.partition->cells().end()});

  const int n = squares.empty() ? partition->order() : squares[0].order();
  std::string object;
  if (squares.size() >= 2 || partition) {
    const auto k = squares.size();
    validate_mols(n, squares, partition);
    object = partition ? std::to_string(k) + " mutually orthogonal gerechte design(s) of order " + std::to_string(n)
                       : std::to_string(k) + "-MOLS of order " + std::to_string(n);
  } else {
    object = "Latin square of order " + std::to_string(n);
  }

  if (!f.transversals.empty()) {
    if (squares.empty()) throw ParseError("TRANSVERSAL block without a square");
    for (std::size_t i = 0; i < f.transversals.size(); ++i)
      if (!is_transversal(squares[0], f.transversals[i]))
        throw ValidationError({Rule::Transversal, static_cast<int>(i)},
                              "transversal " + std::to_string(i + 1) + " is not a transversal of square 1");
    object += " with " + std::to_string(f.transversals.size()) + " transversal(s)";
  }
  return {object};
}

int cmd_verify(const std::vector<std::string>& paths, const Common& c, std::ostream& out, std::ostream& err) {
  ReportDocument r("verify");
  int code = kExitOk;
  for (const auto& path : paths) {
    Json entry{{"path", path}};
    try {
      DesignFile f;
      if (is_generator_spec(path))
        f.squares.push_back(resolve_square(path, c.order_limit));
      else
        f = read_design_file(path);
      const auto outcome = verify_design(f);
      entry["valid"] = true;
      entry["object"] = outcome.object;
    } catch (const ValidationError& e) {
      entry["valid"] = false;
      entry["definition"] = std::string(rule_definition(e.violation().rule));
      entry["message"] = e.what();
      err << path << ": invalid: " << rule_definition(e.violation().rule) << ": " << e.what() << "\n";
      if (code == kExitOk) code = kExitInvalid;
    } catch (const OrderMismatch& e) {
      entry["valid"] = false;
      entry["message"] = e.what();
      err << path << ": invalid: " << e.what() << "\n";
      if (code == kExitOk) code = kExitInvalid;
    } catch (const ParseError& e) {
      entry["valid"] = false;
      entry["message"] = e.what();
      err << path << ": parse error: " << e.what() << "\n";
      code = kExitIo;
    } catch (const IoError& e) {
      entry["valid"] = false;
      entry["message"] = e.what();
      err << path << ": " << e.what() << "\n";
      code = kExitIo;
    } catch (const InvalidParams& e) {
      entry["valid"] = false;
      entry["message"] = e.what();
      err << path << ": " << e.what() << "\n";
      code = kExitIo;
    }
    r.note(path, entry.value("valid", false) ? entry["object"] : Json("invalid"));
  }
  if (c.format == "structured") {
    out << r.render(ReportFormat::Structured);
  } else {
    for (const auto& [k, v] : r.json()["notes"].items())
      if (v != "invalid") out << k << ": ok (" << v.get<std::string>() << ")\n";
  }
  return code;
}

// ---------------------------------------------------------------------------
// count

struct CountArgs {
  std::string square;
  std::string system;
  std::string partition;
  int n = 0;
  int k = 1;
};

ReportFormat format_of(const Common& c) {
  return c.format == "structured" ? ReportFormat::Structured : ReportFormat::Table;
}

int cmd_count(const std::string& kind, const CountArgs& a, const Common& c, std::ostream& out) {
  ReportDocument r("count " + kind);
  r.enable_timings(c.timings);
  WitnessSink sink(c.emit, kind);
  const SearchOptions opts = search_options(c, sink.enabled());
  if (!c.threshold.empty()) r.param("threshold", c.threshold);
  const auto start = Clock::now();

  auto finish = [&](const auto& result, const std::string& provenance) {
    r.count(kind, result.value, result.exact, provenance);
    if (result.budget_exhausted) r.note("time_budget_exhausted", true);
  };

  if (kind == "transversals" || kind == "partitions" || kind == "mates") {
    r.param("square", a.square);
    const LatinSquare l = validate_latin(resolve_square(a.square, c.order_limit));
    if (kind == "transversals") {
      const auto res = enumerate_transversals(l, opts);
      finish(res, "search:enumerate_transversals");
      for (const auto& t : res.witnesses) sink.write({{l.square()}, {}, {cells_of(t)}, {}});
    } else if (kind == "partitions") {
      const auto res = count_transversal_partitions(l, opts);
      finish(res, "search:count_transversal_partitions");
      BigInt fact = 1;
      for (int i = 2; i <= l.order(); ++i) fact *= i;
      r.count("mates", CountValue::exact(res.value.exact_value() * fact), res.exact,
              "partitions * n!");
      for (const auto& parts : res.witnesses) {
        DesignFile f{{l.square()}, {}, {}, {}};
        for (const auto& t : parts) f.transversals.push_back(cells_of(t));
        sink.write(f);
      }
    } else {
      const auto res = count_mates(l, opts);
      finish(res, "search:count_mates");
      for (const auto& m : res.witnesses) sink.write({{l.square(), m.square()}, {}, {}, {}});
    }
  } else if (kind == "extensions") {
    r.param("system", a.system);
    if (!a.partition.empty()) r.param("partition", a.partition);
    const auto loaded = load_system(a.system, a.partition, c.order_limit);
    const auto res = count_extensions(loaded.array, opts);
    finish(res, "search:count_extensions");
    for (const auto& col : res.witnesses)
      sink.write(system_file(noa_to_system(append_column(loaded.array, col)), loaded.has_partition));
  } else {
    std::optional<RegionPartition> p;
    if (kind == "mols") {
      r.param("n", a.n);
    } else if (kind == "sudoku") {
      r.param("n", a.n);
      p = partition_boxes(a.n);
    } else {
      r.param("partition", a.partition);
      p = resolve_partition(a.partition, c.order_limit);
    }
    r.param("k", a.k);
    const auto res = p ? count_systems(*p, a.k, opts) : count_mols(a.n, a.k, opts);
    finish(res, p ? "search:count_systems" : "search:count_mols");
    for (const auto& sys : res.witnesses) sink.write(system_file(sys, true));
  }
  r.timing("search", seconds_since(start));
  sink.record(r);
  out << r.render(format_of(c));
  return kExitOk;
}

// ---------------------------------------------------------------------------
// bound

struct BoundArgs {
  std::int64_t n = 0;
  int k = 0;
  std::string system;
  std::string partition;
};

void add_bound_report(ReportDocument& r, const BoundReport& b) {
  for (const auto& v : b.values) r.nats(v.name, v.nats, v.source, v.asymptotic_only);
  for (const auto& [name, ok] : b.checks) r.check(name, "", "", "", ok);
  if (b.quadrature_error > 0 || b.propagated_error > 0) {
    r.note("quadrature_error", b.quadrature_error);
    r.note("propagated_error", b.propagated_error);
  }
}

int cmd_bound(const std::string& kind, const BoundArgs& a, const Common& c, std::ostream& out) {
  ReportDocument r("bound " + kind);
  r.param("tol", c.tol);
  if (kind == "extension") {
    if (!a.system.empty() || !a.partition.empty()) {
      if (!a.system.empty()) r.param("system", a.system);
      if (!a.partition.empty()) r.param("partition", a.partition);
      const auto loaded = load_system(a.system, a.partition, c.order_limit);
      const int d = loaded.array.width();
      const auto q = extension_bound_general_detail(cell_profile(loaded.array), d, c.tol);
      r.param("d", d);
      r.nats("extension_bound", q.value, "gerechte-extension-bound");
      r.note("quadrature_error", q.error);
    } else {
      r.param("n", a.n);
      r.param("k", a.k);
      const auto q = integral_I_detail(a.n, a.k + 2, c.tol);
      const double n2 = static_cast<double>(a.n) * static_cast<double>(a.n);
      r.nats("extension_bound", n2 * q.value, "mols-extension-bound:n^2*I_{k+2}");
      if (q.in_estimate_domain)
        r.nats("integral_estimate", n2 * closed_form_estimate(a.n, a.k + 2), "integral-estimate:closed-form");
      r.note("quadrature_error", q.error);
    }
  } else {
    r.param("n", a.n);
    r.param("k", a.k);
    if (kind == "mols-count")
      add_bound_report(r, mols_count_bound(a.n, a.k, c.tol));
    else if (kind == "sudoku")
      add_bound_report(r, sudoku_extension_bound(a.n, a.k, c.tol));
    else
      add_bound_report(r, reference_asymptotics(a.n, a.k));
  }
  out << r.render(format_of(c));
  return r.all_checks_hold() ? kExitOk : kExitViolation;
}

// ---------------------------------------------------------------------------
// certify

struct CertifyArgs {
  int n = 0;
  std::optional<int> k;
  bool all_k = false;
  std::string partition;
  std::string base = "cayley:3";
  std::string base2;
  int m = 3;
  std::string q;
  double C = 1.0;
  int limit = 5;
  int power = 2;
};

std::vector<int> k_range(const CertifyArgs& a, int n) {
  if (a.all_k || !a.k) {
    std::vector<int> ks;
    for (int k = 0; k <= n - 2; ++k) ks.push_back(k);
    return ks;
  }
  if (*a.k < 0 || *a.k > n - 2) throw InvalidParams("k must satisfy 0 <= k <= n-2");
  return {*a.k};
}

BigInt factorial(int n) {
  BigInt f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

BigInt parse_big(const std::string& s, const char* what) {
  try {
    BigInt v(s);
    if (v < 0) throw InvalidParams(std::string(what) + " must be nonnegative");
    return v;
  } catch (const InvalidParams&) {
    throw;
  } catch (const std::exception&) {
    throw InvalidParams(std::string(what) + " must be an integer");
  }
}

void certify_theorem12(const CertifyArgs& a, const Common& c, ReportDocument& r) {
  if (a.n < 2) throw InvalidParams("certify theorem12 needs n >= 2");
  r.param("n", a.n);
  SearchOptions opts = search_options(c, false);
  for (int k : k_range(a, a.n)) {
    const auto mx = max_extensions(a.n, k, opts);
    const double bound = extension_bound_mols(a.n, k, c.tol);
    const BigInt& best = mx.best.value.exact_value();
    const std::string tag = "k=" + std::to_string(k);
    r.count("max_extensions " + tag, mx.best.value, true, "search:max_extensions");
    r.count("systems_examined " + tag, CountValue::exact(mx.systems_examined), true, "search:for_each_system");
    r.nats("extension_bound " + tag, bound, "mols-extension-bound:n^2*I_{k+2}");
    r.check("extensions <= bound " + tag, ln_of(best), "<=", num(bound),
            best == 0 || log_of(best) <= bound + kCheckSlack);
  }
}

void certify_theorem31(const CertifyArgs& a, const Common& c, ReportDocument& r) {
  r.param("partition", a.partition);
  const RegionPartition p = resolve_partition(a.partition, c.order_limit);
  const int n = p.order();
  if (n > c.order_limit.value_or(kSystemCountOrderLimit))
    throw LimitExceeded("certify theorem31: order " + std::to_string(n) + " exceeds limit");
  SearchOptions opts = search_options(c, false);
  opts.stop_threshold.reset();
  for (int k : k_range(a, std::max(n, 2))) {
    const std::string tag = "k=" + std::to_string(k);
    BigInt best = -1;
    std::uint64_t systems = 0;
    std::optional<double> bound;
    for_each_system(p, k, [&](const NearlyOrthArray& arr) {
      ++systems;
      if (!bound) bound = extension_bound_general(cell_profile(arr), arr.width(), c.tol);
      const auto e = count_extensions(arr, opts);
      if (e.value.exact_value() > best) best = e.value.exact_value();
      return true;
    });
    r.count("systems " + tag, CountValue::exact(systems), true, "search:for_each_system");
    if (!bound) {
      r.note("no_systems " + tag, true);
      continue;
    }
    r.count("max_extensions " + tag, CountValue::exact(best), true, "search:count_extensions");
    r.nats("extension_bound " + tag, *bound, "gerechte-extension-bound");
    r.check("extensions <= bound " + tag, ln_of(best), "<=", num(*bound),
            best == 0 || log_of(best) <= *bound + kCheckSlack);
  }
}

void certify_prop41(const CertifyArgs& a, const Common& c, ReportDocument& r) {
  const std::string spec2 = a.base2.empty() ? a.base : a.base2;
  r.param("base", a.base);
  r.param("base2", spec2);
  const LatinSquare l1 = validate_latin(resolve_square(a.base, c.order_limit));
  const LatinSquare l2 = validate_latin(resolve_square(spec2, c.order_limit));
  SearchOptions exact_opts = search_options(c, false);
  exact_opts.stop_threshold.reset();
  exact_opts.time_budget.reset();
  const BigInt q1 = count_mates(l1, exact_opts).value.exact_value();
  const BigInt q2 = count_mates(l2, exact_opts).value.exact_value();
  const int n1 = l1.order();
  const int n2 = l2.order();
  const int n = n1 * n2;
  r.count("mates base", CountValue::exact(q1), true, "search:count_mates");
  r.count("mates base2", CountValue::exact(q2), true, "search:count_mates");

  // q1 q2^(n1^2) (n1 n2)! / (n1! (n2!)^n1), an integer.
  const BigInt multinomial = factorial(n) / (factorial(n1) * boost::multiprecision::pow(factorial(n2), n1));
  const BigInt bound = q1 * boost::multiprecision::pow(q2, static_cast<unsigned>(n1 * n1)) * multinomial;
  const double log_bound = prop41_bound(n1, n2, log_of(q1), log_of(q2));
  r.count("product_mate_bound", CountValue::exact(bound), true, "product-mate-bound:exact");
  r.nats("product_mate_bound_log", log_bound, "product-mate-bound:log-domain");
  const bool arithmetic_ok =
      bound == 0 ? std::isinf(log_bound) && log_bound < 0
                 : std::abs(log_of(bound) - log_bound) <= 1e-9 * std::max(1.0, std::abs(log_bound));
  r.check("log-domain bound matches exact bound", num(log_bound), "==", ln_of(bound), arithmetic_ok);

  const BigInt nfact = factorial(n);
  const BigInt threshold = (bound + nfact - 1) / nfact;
  r.count("partition_threshold", CountValue::exact(threshold), true, "ceil(bound / n!)");
  if (threshold == 0) {
    r.check("mates of product >= bound", "0", ">=", "0", true);
    return;
  }
  const LatinSquare product = kronecker(l1, l2, c.order_limit);
  SearchOptions opts = search_options(c, false);
  opts.stop_threshold = threshold;
  const auto start = Clock::now();
  const auto parts = count_transversal_partitions(product, opts);
  r.timing("partition_search", seconds_since(start));
  const BigInt& found = parts.value.exact_value();
  r.count("partitions_found", parts.value, parts.exact, "search:count_transversal_partitions");
  const BigInt certified = found * nfact;
  r.count("mates_certified", CountValue::exact(certified), parts.exact, "partitions * n!");
  if (parts.budget_exhausted) {
    r.note("time_budget_exhausted", true);
    if (found < threshold)
      throw BudgetExhausted("time budget exhausted after " + found.str() + " of " + threshold.str() +
                            " partitions");
  }
  r.check("mates of product >= bound", certified.str(), ">=", bound.str(), certified >= bound);
}

void certify_cor42(const CertifyArgs& a, const Common& c, ReportDocument& r) {
  const int k = a.k.value_or(3);
  if (a.m < 2 || k < 1) throw InvalidParams("certify cor42 needs m >= 2 and k >= 1");
  BigInt q;
  if (!a.q.empty()) {
    q = parse_big(a.q, "--q");
    r.param("q", a.q);
  } else {
    r.param("base", a.base);
    const LatinSquare l = validate_latin(resolve_square(a.base, c.order_limit));
    if (l.order() != a.m) throw InvalidParams("--base order differs from --m");
    SearchOptions opts = search_options(c, false);
    opts.stop_threshold.reset();
    q = count_mates(l, opts).value.exact_value();
    r.count("mates base", CountValue::exact(q), true, "search:count_mates");
  }
  r.param("m", a.m);
  r.param("k", k);
  if (q == 0) throw InvalidParams("cor42 needs q >= 1");
  const double log_q = log_of(q);
  for (int j = 1; j <= k; ++j) {
    const std::int64_t mj = static_cast<std::int64_t>(std::llround(std::pow(a.m, j)));
    const double lhs = prop41_bound(mj, a.m, power_mate_bound(a.m, log_q, j), log_q);
    const double rhs = power_mate_bound(a.m, log_q, j + 1);
    const std::string tag = "k=" + std::to_string(j + 1);
    r.nats("power_mate_bound " + tag, rhs, "power-mate-bound");
    r.nats("product_step_bound " + tag, lhs, "product-mate-bound");
    r.check("product step >= power bound " + tag, num(lhs), ">=", num(rhs), lhs >= rhs - 1e-9);
  }
}

void add_certificate(ReportDocument& r, const MateCertificate& cert) {
  r.note("certificate", cert.description);
  r.note("derivation", cert.derivation);
  r.param("base_order", cert.base_order);
  r.count("base_mates", CountValue::exact(cert.base_mates), cert.base_count_exact, "search:count_mates");
  r.count("squares_examined", CountValue::exact(cert.squares_examined), true, "search:for_each_system");
  r.count("order", CountValue::exact(cert.order), true, "base_order^power");
  r.nats("mate_lower_bound", cert.log_lower_bound, "power-mate-bound");
  r.nats("target", cert.target, "order^2 * ln C");
  r.check("mates >= C^(order^2)", num(cert.log_lower_bound), ">=", num(cert.target),
          cert.log_lower_bound >= cert.target - 1e-9);
}

void certify_cor43(const CertifyArgs& a, const Common& c, ReportDocument& r) {
  r.param("C", a.C);
  r.param("limit", a.limit);
  r.param("power", a.power);
  add_certificate(r, construct_for_constant(a.C, a.limit, a.power, search_options(c, false)));
}

int cmd_certify(const std::string& target, const CertifyArgs& a, const Common& c, std::ostream& out) {
  ReportDocument r("certify " + target);
  r.enable_timings(c.timings);
  if (target == "theorem12" || target == "mols-extensions") certify_theorem12(a, c, r);
  else if (target == "theorem31" || target == "gerechte-extensions") certify_theorem31(a, c, r);
  else if (target == "prop41" || target == "product-mates") certify_prop41(a, c, r);
  else if (target == "cor42" || target == "power-mates") certify_cor42(a, c, r);
  else certify_cor43(a, c, r);
  out << r.render(format_of(c));
  return r.all_checks_hold() ? kExitOk : kExitViolation;
}

// ---------------------------------------------------------------------------
// construct

int cmd_construct(const CertifyArgs& a, const std::string& square, const Common& c, std::ostream& out) {
  if (!square.empty()) {
    const Square s = resolve_square(square, c.order_limit);
    if (c.format == "structured") {
      ReportDocument r("construct");
      r.param("square", square);
      Json rows = Json::array();
      for (int i = 0; i < s.order(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < s.order(); ++j) row.push_back(s.at(i, j) + 1);
        rows.push_back(row);
      }
      r.note("square", rows);
      out << r.render(ReportFormat::Structured);
    } else {
      out << format_square(s);
    }
    if (!c.emit.empty()) WitnessSink(c.emit, "square").write({{s}, {}, {}, {}});
    return kExitOk;
  }
  ReportDocument r("construct");
  r.param("C", a.C);
  r.param("limit", a.limit);
  r.param("power", a.power);
  const auto cert = construct_for_constant(a.C, a.limit, a.power, search_options(c, false));
  add_certificate(r, cert);
  WitnessSink sink(c.emit, "base");
  sink.write({{cert.base.square()}, {}, {}, {}});
  sink.record(r);
  out << r.render(format_of(c));
  return r.all_checks_hold() ? kExitOk : kExitViolation;
}

// ---------------------------------------------------------------------------

void add_common(CLI::App& app, Common& c) {
  app.add_option("--threads", c.threads, "Worker threads (0 = all cores)")->capture_default_str();
  app.add_option("--cap", c.cap, "Maximum number of witnesses to emit");
  app.add_option("--threshold", c.threshold, "Stop counting once this many are found");
  app.add_option("--tol", c.tol, "Absolute quadrature tolerance")->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--emit-witnesses", c.emit, "Directory for witness files");
  app.add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"table", "structured"}))
      ->capture_default_str();
  app.add_option("--time-budget", c.time_budget, "Search time budget in seconds");
  app.add_flag("--timings", c.timings, "Include wall-clock timings in the report");
}

int dispatch(const std::function<int()>& body, std::ostream& err) {
  try {
    return body();
  } catch (const BudgetExhausted& e) {
    err << "error: " << e.what() << "\n";
    return kExitLimit;
  } catch (const ValidationError& e) {
    err << "invalid: " << rule_definition(e.violation().rule) << ": " << e.what() << "\n";
    return kExitInvalid;
  } catch (const OrderMismatch& e) {
    err << "invalid: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitIo;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const LimitExceeded& e) {
    err << "limit exceeded: " << e.what() << "\n";
    return kExitLimit;
  } catch (const NotFoundWithinLimit& e) {
    err << "not found: " << e.what() << "\n";
    return kExitLimit;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitParams;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Counting and bounding mutually orthogonal Latin squares", "molscope"};
  app.fallthrough();
  app.require_subcommand(1);
  Common common;
  add_common(app, common);

  std::vector<std::string> paths;
  auto* verify = app.add_subcommand("verify", "Validate squares, systems, arrays and transversals");
  verify->add_option("paths", paths, "Files or generator specs")->required();

  CountArgs ca;
  auto* count = app.add_subcommand("count", "Exact counts by search");
  count->require_subcommand(1);
  for (const char* kind : {"transversals", "partitions", "mates"}) {
    auto* s = count->add_subcommand(kind);
    s->add_option("--square", ca.square, "Square file or generator")->required();
  }
  {
    auto* s = count->add_subcommand("extensions", "Columns extending a system");
    s->add_option("--system", ca.system, "System file, array file or square generator");
    s->add_option("--partition", ca.partition, "Region partition file or generator");
  }
  for (const char* kind : {"mols", "sudoku"}) {
    auto* s = count->add_subcommand(kind);
    s->add_option("--n", ca.n, "Order")->required();
    s->add_option("--k", ca.k, "Number of squares")->capture_default_str();
  }
  {
    auto* s = count->add_subcommand("systems", "Mutually orthogonal gerechte designs for a partition");
    s->add_option("--partition", ca.partition)->required();
    s->add_option("--k", ca.k)->capture_default_str();
  }

  BoundArgs ba;
  auto* bound = app.add_subcommand("bound", "Upper bounds and reference asymptotics, in nats");
  bound->require_subcommand(1);
  for (const char* kind : {"extension", "mols-count", "sudoku", "reference"}) {
    auto* s = bound->add_subcommand(kind);
    s->add_option("--n", ba.n, "Order");
    s->add_option("--k", ba.k, "Number of squares");
    if (std::string(kind) == "extension") {
      s->add_option("--system", ba.system);
      s->add_option("--partition", ba.partition);
    }
  }

  CertifyArgs cert;
  std::string construct_square;
  auto* certify = app.add_subcommand("certify", "Compare exact counts against bounds");
  certify->require_subcommand(1);
  for (const char* t : {"theorem12", "mols-extensions"}) {
    auto* s = certify->add_subcommand(t);
    s->add_option("--n", cert.n)->required();
    s->add_option("--k", cert.k);
    s->add_flag("--all-k", cert.all_k);
  }
  for (const char* t : {"theorem31", "gerechte-extensions"}) {
    auto* s = certify->add_subcommand(t);
    s->add_option("--partition", cert.partition)->required();
    s->add_option("--k", cert.k);
    s->add_flag("--all-k", cert.all_k);
  }
  for (const char* t : {"prop41", "product-mates"}) {
    auto* s = certify->add_subcommand(t);
    s->add_option("--base", cert.base)->capture_default_str();
    s->add_option("--base2", cert.base2);
  }
  for (const char* t : {"cor42", "power-mates"}) {
    auto* s = certify->add_subcommand(t);
    s->add_option("--m", cert.m)->capture_default_str();
    s->add_option("--q", cert.q, "Mate count of the base square");
    s->add_option("--base", cert.base, "Base square whose mates are counted when --q is absent");
    s->add_option("--k", cert.k);
  }
  for (const char* t : {"cor43", "constant-mates"}) {
    auto* s = certify->add_subcommand(t);
    s->add_option("--C", cert.C)->required();
    s->add_option("--limit", cert.limit)->capture_default_str();
    s->add_option("--power", cert.power)->capture_default_str();
  }
  auto* construct = app.add_subcommand("construct", "Build squares and mate-count certificates");
  construct->add_option("--square", construct_square, "Print a generated square");
  construct->add_option("--C", cert.C);
  construct->add_option("--limit", cert.limit)->capture_default_str();
  construct->add_option("--power", cert.power)->capture_default_str();

  std::vector<std::string> argv_store{"molscope"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : argv_store) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitParams;
  }

  return dispatch(
      [&]() -> int {
        common.order_limit = env_order_limit();
        if (verify->parsed()) return cmd_verify(paths, common, out, err);
        if (count->parsed()) return cmd_count(count->get_subcommands().front()->get_name(), ca, common, out);
        if (bound->parsed()) return cmd_bound(bound->get_subcommands().front()->get_name(), ba, common, out);
        if (certify->parsed())
          return cmd_certify(certify->get_subcommands().front()->get_name(), cert, common, out);
        return cmd_construct(cert, construct_square, common, out);
      },
      err);
}

}  // namespace molscope
