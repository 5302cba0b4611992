#include <doctest.h>

#include "molscope/array_forms.hpp"

using namespace molscope;

namespace {

LatinSquare cyclic(int n, int step = 1) {
  std::vector<int> cells(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) cells[i * n + j] = (step * i + j) % n;
  return validate_latin(Square(n, cells));
}

}  // namespace

TEST_CASE("MOLS to OA and back is the identity") {
  const auto sys = validate_mols(3, {cyclic(3, 1), cyclic(3, 2)});
  const auto oa = mols_to_oa(sys);
  CHECK(oa.width() == 4);
  CHECK(oa.rows() == 9);
  CHECK(oa.at(5, 0) == 1);
  CHECK(oa.at(5, 1) == 2);
  CHECK(oa_to_mols(oa) == sys);
}

TEST_CASE("OA validation names the first bad column pair") {
  std::vector<int> data;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) data.insert(data.end(), {i, j, i});
  try {
    OrthArray::validate(2, 3, data);
    FAIL("expected a violation");
  } catch (const ValidationError& e) {
    CHECK(e.violation().rule == Rule::OrthArray);
    CHECK(e.violation().first == 0);
    CHECK(e.violation().second == 2);
  }
}

TEST_CASE("OA coordinatized by other columns gives a different system") {
  const auto oa = mols_to_oa(validate_mols(3, {cyclic(3, 1), cyclic(3, 2)}));
  const auto sys = oa_to_mols(oa, {2, 3});
  CHECK(sys.size() == 2);
}

TEST_CASE("systems with partitions round-trip through NOA") {
  const auto s = validate_latin(Square::from_rows({{0, 1, 2, 3}, {2, 3, 0, 1}, {1, 0, 3, 2}, {3, 2, 1, 0}}));
  const auto sys = validate_mols(4, {s}, partition_boxes(4));
  const auto noa = system_to_noa(sys);
  CHECK(noa.width() == 4);
  CHECK(noa_to_system(noa) == sys);
  CHECK_THROWS_AS(mols_to_oa(sys), InvalidParams);
  CHECK_THROWS_AS(system_to_noa(validate_mols(4, {s})), InvalidParams);
}

TEST_CASE("NOA validation rejects each broken rule") {
  const auto good = system_to_noa(validate_mols(3, {cyclic(3)}, partition_rows(3)));
  std::vector<int> data(good.data().begin(), good.data().end());
  CHECK_NOTHROW(NearlyOrthArray::validate(3, 4, data));

  auto swapped = data;
  std::swap(swapped[0], swapped[12]);  // breaks v1
  CHECK_THROWS_AS(NearlyOrthArray::validate(3, 4, swapped), ValidationError);

  auto unbalanced = data;
  unbalanced[2] = 1;  // region column no longer balanced
  CHECK_THROWS_AS(NearlyOrthArray::validate(3, 4, unbalanced), ValidationError);

  auto repeated = data;
  repeated[3] = repeated[7];  // square column repeats a pair with v1
  CHECK_THROWS_AS(NearlyOrthArray::validate(3, 4, repeated), ValidationError);

  CHECK_THROWS_AS(NearlyOrthArray::validate(3, 2, std::vector<int>(18, 0)), InvalidParams);
}

TEST_CASE("vectors_orthogonal") {
  const auto v1 = coordinate_column(3, 0);
  const auto v2 = coordinate_column(3, 1);
  CHECK(vectors_orthogonal(v1, v2, 3));
  CHECK_FALSE(vectors_orthogonal(v1, v1, 3));
  CHECK_THROWS_AS(vectors_orthogonal(v1, std::vector<int>{0, 1}, 3), LengthMismatch);
}

TEST_CASE("cell profiles of the row and box partitions") {
  const auto rows = system_to_noa(validate_mols(4, {}, partition_rows(4)));
  const auto prow = cell_profile(rows);
  for (int l = 0; l < 16; ++l) {
    CHECK(prow.r[l] == 3);
    CHECK(prow.c[l] == 0);
  }
  const auto boxes = system_to_noa(validate_mols(4, {}, partition_boxes(4)));
  const auto pbox = cell_profile(boxes);
  for (int l = 0; l < 16; ++l) {
    CHECK(pbox.r[l] == 1);
    CHECK(pbox.c[l] == 1);
  }
}

TEST_CASE("append_column validates the new column") {
  const auto base = system_to_noa(validate_mols(3, {}, partition_rows(3)));
  const auto sq = cyclic(3);
  const auto ext = append_column(base, sq.cells());
  CHECK(ext.width() == 4);
  CHECK_THROWS_AS(append_column(ext, sq.cells()), ValidationError);
}
