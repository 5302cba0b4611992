#pragma once

// Explicit constructions: Cayley tables of finite abelian groups, Kronecker
// products, mates from translates of a transversal, and log-domain lower
// bounds on mate counts of product squares.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "molscope/count_value.hpp"
#include "molscope/design.hpp"
#include "molscope/search.hpp"

namespace molscope {

/// Default order limit for constructed squares.
inline constexpr int kConstructionOrderLimit = 1024;

/// Z_{m_1} x ... x Z_{m_r}. An empty factor list is the trivial group.
struct GroupSpec {
  std::vector<int> factors;

  /// Throws InvalidParams unless every factor is >= 2.
  static GroupSpec make(std::vector<int> factors);
  std::int64_t order() const;
  /// "Z3xZ3", or "Z1" for the trivial group.
  std::string name() const;
};

/// Elements are enumerated in mixed radix with the first factor most
/// significant; entry (a, b) is the index of a + b.
LatinSquare cayley_table(const GroupSpec& g, std::optional<int> order_limit = std::nullopt);

/// Row (i1, i2) -> i1*n2 + i2, likewise for columns and symbol pairs.
LatinSquare kronecker(const LatinSquare& a, const LatinSquare& b,
                      std::optional<int> order_limit = std::nullopt);

/// Left-associated k-fold Kronecker power, k >= 1.
LatinSquare power(const LatinSquare& l, int k, std::optional<int> order_limit = std::nullopt);

struct TranslateMates {
  /// Part h holds the translate of the transversal by group element h.
  RegionPartition partition;
  /// Mates in lexicographic order of the symbol assignment to parts.
  std::vector<LatinSquare> mates;
};

/// Throws NotATransversal if t is not a transversal of cayley_table(g) and
/// TranslatesNotDisjoint if the translates overlap.
TranslateMates translate_mates(const GroupSpec& g, const Transversal& t, std::uint64_t count_to_emit);

/// Log of q1 q2^(n1^2) (n1 n2)! / (n1! (n2!)^n1).
double prop41_bound(std::int64_t n1, std::int64_t n2, double log_q1, double log_q2);

/// (m^(2k) - 1) / (m^2 - 1), exactly.
BigInt power_mate_exponent(int m, int k);
/// power_mate_exponent(m, k) * log_q, for m >= 2, k >= 1.
double power_mate_bound(int m, double log_q, int k);

struct MateCertificate {
  std::string description;
  LatinSquare base;
  int base_order = 0;
  /// Mates of the base square found by search; a lower bound when the
  /// search stopped at its threshold.
  BigInt base_mates;
  bool base_count_exact = false;
  int power = 1;
  std::int64_t order = 0;
  /// Guaranteed log of the mate count of base^power.
  double log_lower_bound = 0;
  /// order^2 log C.
  double target = 0;
  std::string derivation;
  std::uint64_t squares_examined = 0;
};

/// Smallest base order m in [2, search_limit], and the first order-m Latin
/// square in search order, with at least max(1, ceil(C^(m^2))) mates; the
/// certificate covers its power-th Kronecker power. Throws
/// NotFoundWithinLimit when no base square qualifies.
MateCertificate construct_for_constant(double C, int search_limit, int power = 2,
                                       const SearchOptions& opts = {});

}  // namespace molscope
