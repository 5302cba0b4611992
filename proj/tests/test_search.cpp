#include <doctest.h>

#include <chrono>

#include "molscope/search.hpp"
#include "oracles.hpp"

using namespace molscope;

namespace {

LatinSquare to_latin(int n, const oracle::Grid& g) { return validate_latin(Square(n, g)); }

std::uint64_t value_of(const CountValue& v) { return v.exact_value().convert_to<std::uint64_t>(); }

NearlyOrthArray empty_array(const RegionPartition& p) { return system_to_noa(validate_mols(p.order(), {}, p)); }

}  // namespace

TEST_CASE("count_mols(n, 1) matches direct backtracking for n <= 5") {
  for (int n = 1; n <= 5; ++n) {
    const auto expected = oracle::latin_squares(n).size();
    CHECK(value_of(count_mols(n, 1).value) == expected);
  }
}

TEST_CASE("k-MOLS counts of orders 3 and 4 match pairwise oracle counts") {
  const auto pool3 = oracle::latin_squares(3);
  CHECK(value_of(count_mols(3, 2).value) == oracle::count_tuples(pool3, 2));
  CHECK(value_of(count_mols(3, 2).value) == 72);
  CHECK(value_of(count_mols(3, 3).value) == 0);
  const auto pool4 = oracle::latin_squares(4);
  CHECK(value_of(count_mols(4, 2).value) == oracle::count_tuples(pool4, 2));
  CHECK(value_of(count_mols(4, 3).value) == oracle::count_tuples(pool4, 3));
  CHECK(value_of(count_mols(2, 2).value) == 0);
  CHECK(value_of(count_mols(4, 0).value) == 1);
}

TEST_CASE("mates agree with the oracle for every square of orders 3 and 4") {
  for (int n : {3, 4}) {
    const auto all = oracle::latin_squares(n);
    for (const auto& g : all) {
      const auto l = to_latin(n, g);
      const auto mates = value_of(count_mates(l).value);
      CHECK(mates == oracle::count_mates(g, all));
      // Each mate is an ordered transversal partition.
      const auto parts = value_of(count_transversal_partitions(l).value);
      CHECK(mates == parts * (n == 3 ? 6 : 24));
    }
  }
}

TEST_CASE("transversals agree with the permutation oracle") {
  for (const auto& g : oracle::latin_squares(4)) {
    const auto l = to_latin(4, g);
    const auto expected = oracle::transversals(g, 4);
    SearchOptions opts;
    opts.cap = 1000;
    const auto res = enumerate_transversals(l, opts);
    REQUIRE(res.witnesses.size() == expected.size());
    CHECK(value_of(res.value) == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i)
      for (int r = 0; r < 4; ++r) CHECK(res.witnesses[i].cells()[r] == Cell{r, expected[i][r]});
  }
}

TEST_CASE("sudoku and symbol-class gerechte counts match the filter oracle") {
  const auto all4 = oracle::latin_squares(4);
  const auto boxes = partition_boxes(4);
  const oracle::Grid box_labels(boxes.labels().begin(), boxes.labels().end());
  std::vector<oracle::Grid> sudoku;
  for (const auto& g : all4)
    if (oracle::gerechte(g, box_labels)) sudoku.push_back(g);
  CHECK(sudoku.size() == 288);
  CHECK(value_of(count_systems(boxes, 1).value) == 288);
  CHECK(value_of(count_systems(boxes, 2).value) == oracle::count_tuples(sudoku, 2));

  for (std::size_t i = 0; i < all4.size(); i += 37) {
    const auto p = partition_from_square(Square(4, all4[i]));
    std::vector<oracle::Grid> designs;
    for (const auto& g : all4)
      if (oracle::gerechte(g, all4[i])) designs.push_back(g);
    CHECK(value_of(count_systems(p, 1).value) == designs.size());
    CHECK(value_of(count_systems(p, 2).value) == oracle::count_tuples(designs, 2));
  }
}

TEST_CASE("extension counts sum to the next system count") {
  const auto p = partition_boxes(4);
  std::uint64_t total = 0;
  std::uint64_t systems = 0;
  for_each_system(p, 1, [&](const NearlyOrthArray& a) {
    ++systems;
    total += value_of(count_extensions(a).value);
    return true;
  });
  CHECK(systems == 288);
  CHECK(total == value_of(count_systems(p, 2).value));
}

TEST_CASE("for_each_extension visits exactly the counted columns") {
  const auto a = empty_array(partition_rows(4));
  std::uint64_t seen = 0;
  for_each_extension(a, [&](std::span<const int> col) {
    CHECK(col.size() == 16);
    ++seen;
    return true;
  });
  CHECK(seen == 576);
}

TEST_CASE("counts and witnesses do not depend on the thread count") {
  const auto l = validate_latin(Square::from_rows({{0, 1, 2, 3, 4},
                                                   {1, 2, 3, 4, 0},
                                                   {2, 3, 4, 0, 1},
                                                   {3, 4, 0, 1, 2},
                                                   {4, 0, 1, 2, 3}}));
  SearchOptions one;
  one.cap = 5;
  for (unsigned threads : {2u, 3u, 8u}) {
    SearchOptions many = one;
    many.threads = threads;
    CHECK(count_mols(5, 1, one).value == count_mols(5, 1, many).value);
    CHECK(count_mates(l, one).witnesses == count_mates(l, many).witnesses);
    CHECK(count_transversal_partitions(l, one).value == count_transversal_partitions(l, many).value);
    CHECK(count_systems(partition_boxes(4), 2, one).witnesses ==
          count_systems(partition_boxes(4), 2, many).witnesses);
  }
}

TEST_CASE("threshold stops report the threshold as a lower bound") {
  for (unsigned threads : {1u, 4u}) {
    SearchOptions opts;
    opts.threads = threads;
    opts.stop_threshold = BigInt(1000);
    const auto res = count_mols(5, 1, opts);
    CHECK_FALSE(res.exact);
    CHECK(value_of(res.value) == 1000);
  }
  SearchOptions high;
  high.stop_threshold = BigInt(1000000);
  const auto res = count_mols(5, 1, high);
  CHECK(res.exact);
  CHECK(value_of(res.value) == 161280);
}

TEST_CASE("witness caps and threshold caps") {
  SearchOptions opts;
  opts.cap = 7;
  const auto res = count_mols(4, 1, opts);
  CHECK(res.witnesses.size() == 7);
  CHECK(res.witnesses[0].squares()[0].at(0, 0) == 0);
  opts.stop_threshold = BigInt(3);
  CHECK(count_mols(4, 1, opts).witnesses.size() == 3);
}

TEST_CASE("time budgets stop long searches with a lower bound") {
  std::vector<int> cells(81);
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j) cells[i * 9 + j] = (i + j) % 9;
  SearchOptions opts;
  opts.time_budget = std::chrono::milliseconds(20);
  const auto res = count_transversal_partitions(validate_latin(Square(9, cells)), opts);
  CHECK(res.budget_exhausted);
  CHECK_FALSE(res.exact);
}

TEST_CASE("order limits") {
  CHECK_THROWS_AS(count_mols(6, 1), LimitExceeded);
  SearchOptions opts;
  opts.order_limit = 3;
  CHECK_THROWS_AS(count_mols(4, 1, opts), LimitExceeded);
  CHECK_THROWS_AS(max_extensions(5, 0), LimitExceeded);
}

TEST_CASE("max_extensions over all order-4 squares") {
  const auto all = oracle::latin_squares(4);
  std::uint64_t best = 0;
  for (const auto& g : all) best = std::max(best, oracle::count_mates(g, all));
  const auto mx = max_extensions(4, 1);
  CHECK(value_of(mx.best.value) == best);
  CHECK(mx.systems_examined == 576);
  CHECK(value_of(count_mates(mx.witness.squares()[0]).value) == best);
  CHECK(value_of(max_extensions(3, 0).best.value) == 12);
}
