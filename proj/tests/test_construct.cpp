#include <doctest.h>

#include <cmath>

#include "molscope/bounds.hpp"
#include "molscope/construct.hpp"

using namespace molscope;

namespace {

LatinSquare cayley(std::vector<int> f) { return cayley_table(GroupSpec::make(std::move(f))); }

}  // namespace

TEST_CASE("Cayley tables") {
  const auto z3 = cayley({3});
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(z3.at(i, j) == (i + j) % 3);
  const auto v4 = cayley({2, 2});
  CHECK(v4.order() == 4);
  CHECK(v4.at(1, 2) == 3);
  CHECK(v4.at(3, 3) == 0);
  CHECK(cayley_table(GroupSpec{}).order() == 1);
  CHECK_THROWS_AS(GroupSpec::make({3, 1}), InvalidParams);
  CHECK_THROWS_AS(cayley_table(GroupSpec::make({40, 40})), LimitExceeded);
  CHECK(GroupSpec::make({3, 3}).name() == "Z3xZ3");
}

TEST_CASE("Kronecker products") {
  const auto one = cayley_table(GroupSpec{});
  const auto z3 = cayley({3});
  CHECK(kronecker(one, z3) == z3);
  CHECK(kronecker(z3, one) == z3);
  CHECK(kronecker(cayley({2}), cayley({2})) == cayley({2, 2}));
  CHECK(kronecker(z3, z3) == cayley({3, 3}));
  CHECK(kronecker(cayley({2}), z3) == cayley({2, 3}));
  CHECK_THROWS_AS(kronecker(z3, z3, 8), LimitExceeded);
}

TEST_CASE("Kronecker powers") {
  const auto z3 = cayley({3});
  CHECK(power(z3, 1) == z3);
  CHECK(power(z3, 2).order() == 9);
  CHECK(power(z3, 3) == cayley({3, 3, 3}));
  CHECK_THROWS_AS(power(z3, 0), InvalidParams);
  CHECK_THROWS_AS(power(z3, 7), LimitExceeded);
}

TEST_CASE("translate mates of Z3") {
  const auto z3 = cayley({3});
  const Transversal diag(z3, {{0, 0}, {1, 1}, {2, 2}});
  const auto tm = translate_mates(GroupSpec::make({3}), diag, 100);
  CHECK(tm.mates.size() == 6);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(tm.partition.region_of(i, j) == ((j - i) % 3 + 3) % 3);
  for (const auto& m : tm.mates) CHECK(check_orthogonal(z3, m));
  CHECK(translate_mates(GroupSpec::make({3}), diag, 2).mates.size() == 2);
}

TEST_CASE("Z2 has no transversal to translate") {
  const auto z2 = cayley({2});
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      CHECK_THROWS_AS(Transversal(z2, {{0, a}, {1, b}}), NotATransversal);
}

TEST_CASE("transversals of another square are rejected") {
  const auto other = validate_latin(Square::from_rows({{0, 1, 2}, {2, 0, 1}, {1, 2, 0}}));
  const Transversal t(other, {{0, 0}, {1, 2}, {2, 1}});
  CHECK_THROWS_AS(translate_mates(GroupSpec::make({3}), t, 1), NotATransversal);
}

TEST_CASE("product mate bound") {
  const double ln6 = std::log(6.0);
  CHECK(prop41_bound(3, 3, ln6, ln6) == doctest::Approx(std::log(16930529280.0)).epsilon(1e-14));
  CHECK(prop41_bound(4, 1, 1.25, 0.0) == doctest::Approx(1.25));
  CHECK(std::isinf(prop41_bound(3, 3, ln6, -INFINITY)));
  CHECK_THROWS_AS(prop41_bound(0, 3, 0, 0), InvalidParams);
}

TEST_CASE("power mate bound and its recursion") {
  const double ln6 = std::log(6.0);
  CHECK(power_mate_bound(3, ln6, 1) == doctest::Approx(ln6));
  CHECK(power_mate_bound(3, ln6, 2) == doctest::Approx(10 * ln6));
  CHECK(power_mate_exponent(3, 3) == 91);
  CHECK(power_mate_exponent(2, 20) == (BigInt(1) << 40) / 3);
  for (int m : {2, 3})
    for (double lq : {0.0, ln6})
      for (int k = 1; k <= 4; ++k) {
        const double mk = std::pow(m, k);
        CHECK(prop41_bound(std::int64_t(mk), m, power_mate_bound(m, lq, k), lq) >=
              power_mate_bound(m, lq, k + 1) - 1e-9);
      }
  CHECK_THROWS_AS(power_mate_bound(1, ln6, 2), InvalidParams);
}

TEST_CASE("construct_for_constant") {
  const auto c1 = construct_for_constant(1.0, 5);
  CHECK(c1.base_order == 3);
  CHECK(c1.base_mates >= 1);
  const auto c12 = construct_for_constant(1.2, 5);
  CHECK(c12.base_order == 3);
  CHECK(c12.base_mates >= 6);
  CHECK(c12.order == 9);
  CHECK(c12.log_lower_bound >= c12.target);
  CHECK(c12.log_lower_bound == doctest::Approx(10 * std::log(6.0)));
  CHECK_THROWS_AS(construct_for_constant(1e6, 5), NotFoundWithinLimit);
  CHECK_THROWS_AS(construct_for_constant(-1, 5), InvalidParams);
}
