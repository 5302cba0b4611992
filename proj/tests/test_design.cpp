#include <doctest.h>

#include "molscope/design.hpp"
#include "oracles.hpp"

using namespace molscope;

namespace {

Square sq(std::vector<std::vector<int>> rows) { return Square::from_rows(rows); }

LatinSquare cyclic(int n) {
  std::vector<int> cells(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) cells[i * n + j] = (i + j) % n;
  return validate_latin(Square(n, cells));
}

}  // namespace

TEST_CASE("square construction rejects bad shapes and symbols") {
  CHECK_THROWS_AS(Square(2, {0, 1, 1}), InvalidParams);
  CHECK_THROWS_AS(Square(2, {0, 1, 1, 2}), InvalidParams);
  CHECK_THROWS_AS(Square(2, {0, -1, 1, 0}), InvalidParams);
  CHECK_NOTHROW(Square(1, {0}));
}

TEST_CASE("validate_latin accepts the cyclic square of order 3") {
  const auto l = validate_latin(sq({{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}));
  CHECK(l.order() == 3);
  CHECK(l.at(2, 1) == 0);
}

TEST_CASE("row violations are reported before column violations") {
  try {
    validate_latin(sq({{0, 0, 1}, {1, 2, 0}, {1, 1, 2}}));
    FAIL("expected a violation");
  } catch (const ValidationError& e) {
    CHECK(e.violation().rule == Rule::LatinRow);
    CHECK(e.violation().first == 0);
    CHECK(e.violation().symbol == 0);
  }
  try {
    validate_latin(sq({{0, 1, 2}, {0, 2, 1}, {1, 0, 2}}));
    FAIL("expected a violation");
  } catch (const ValidationError& e) {
    CHECK(e.violation().rule == Rule::LatinColumn);
    CHECK(e.violation().first == 0);
  }
}

TEST_CASE("orthogonality of the order-3 pair and its failure on identical squares") {
  const auto a = cyclic(3);
  const auto b = validate_latin(sq({{0, 1, 2}, {2, 0, 1}, {1, 2, 0}}));
  CHECK(check_orthogonal(a, b));
  CHECK_FALSE(check_orthogonal(a, a));
  CHECK(check_orthogonal_to_square(a, row_index_square(3)));
  CHECK(squares_orthogonal(row_index_square(3), column_index_square(3)));
}

TEST_CASE("validate_mols enforces k <= n-1 before orthogonality") {
  const auto a = cyclic(3);
  const auto b = validate_latin(sq({{0, 1, 2}, {2, 0, 1}, {1, 2, 0}}));
  CHECK(validate_mols(3, {a, b}).size() == 2);
  try {
    validate_mols(3, {a, a, a});
    FAIL("expected a violation");
  } catch (const ValidationError& e) {
    CHECK(e.violation().rule == Rule::TooManySquares);
  }
  try {
    validate_mols(3, {a, a});
    FAIL("expected a violation");
  } catch (const ValidationError& e) {
    CHECK(e.violation().rule == Rule::NotOrthogonal);
    CHECK(e.violation().first == 0);
    CHECK(e.violation().second == 1);
  }
  CHECK_THROWS_AS(validate_mols(4, {a}), OrderMismatch);
}

TEST_CASE("order one admits the single cell square as its own mate") {
  const auto one = validate_latin(Square(1, {0}));
  CHECK(validate_mols(1, {one, one}).size() == 2);
}

TEST_CASE("gerechte checks follow the box partition") {
  const auto boxes = partition_boxes(4);
  const auto s = validate_latin(sq({{0, 1, 2, 3}, {2, 3, 0, 1}, {1, 0, 3, 2}, {3, 2, 1, 0}}));
  CHECK(validate_gerechte(s, boxes));
  CHECK_FALSE(validate_gerechte(cyclic(4), boxes));
  CHECK(validate_gerechte(cyclic(4), partition_rows(4)));
  CHECK_THROWS_AS(partition_boxes(5), NotPerfectSquare);
  try {
    validate_mols(4, {cyclic(4)}, boxes);
    FAIL("expected a violation");
  } catch (const ValidationError& e) {
    CHECK(e.violation().rule == Rule::NotGerechte);
  }
}

TEST_CASE("region partitions must be balanced") {
  CHECK_THROWS_AS(RegionPartition(2, {0, 0, 0, 1}), ValidationError);
  CHECK_THROWS_AS(partition_from_square(sq({{0, 0}, {0, 1}})), ValidationError);
  const auto p = partition_from_square(cyclic(3).square());
  CHECK(p.region_of(1, 2) == 0);
}

TEST_CASE("transversals of the cyclic square of order 3") {
  const auto l = cyclic(3);
  CHECK(is_transversal(l, std::vector<Cell>{{0, 0}, {1, 1}, {2, 2}}));
  CHECK_FALSE(is_transversal(l, std::vector<Cell>{{0, 0}, {1, 2}, {2, 1}}));
  CHECK_FALSE(is_transversal(l, std::vector<Cell>{{0, 0}, {0, 1}, {2, 2}}));
  CHECK_THROWS_AS(Transversal(l, {{0, 0}, {1, 2}, {2, 1}}), NotATransversal);
  const Transversal t(l, {{2, 2}, {0, 0}, {1, 1}});
  CHECK(t.cells()[0] == Cell{0, 0});
}

TEST_CASE("validate_latin agrees with the oracle on every order-3 grid") {
  // All 3^9 grids; the oracle enumerates exactly the Latin ones.
  const auto latin = oracle::latin_squares(3);
  std::set<oracle::Grid> expected(latin.begin(), latin.end());
  int accepted = 0;
  std::vector<int> g(9, 0);
  for (int code = 0; code < 19683; ++code) {
    int x = code;
    for (int i = 0; i < 9; ++i, x /= 3) g[i] = x % 3;
    bool ok = true;
    try {
      validate_latin(Square(3, g));
    } catch (const ValidationError&) {
      ok = false;
    }
    CHECK(ok == (expected.count(g) == 1));
    accepted += ok;
  }
  CHECK(accepted == 12);
}

TEST_CASE("exact_sqrt") {
  CHECK(exact_sqrt(16) == 4);
  CHECK(exact_sqrt(1) == 1);
  CHECK_FALSE(exact_sqrt(15).has_value());
}
