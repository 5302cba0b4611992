#include <doctest.h>

#include <filesystem>

#include "molscope/construct.hpp"
#include "molscope/text_format.hpp"

using namespace molscope;

TEST_CASE("parse squares, partitions and transversals") {
  const auto f = parse_design(
      "# two squares\n"
      "3\n1 2 3\n2 3 1\n3 1 2\n"
      "\n"
      "3\n1 2 3\n3 1 2\n2 3 1\n"
      "\nPARTITION\n3\n1 1 1\n2 2 2\n3 3 3\n"
      "\nTRANSVERSAL\n1 1\n2 3\n3 2\n");
  REQUIRE(f.squares.size() == 2);
  CHECK(f.squares[1].at(1, 0) == 2);
  REQUIRE(f.partition);
  CHECK(f.partition->at(2, 2) == 2);
  REQUIRE(f.transversals.size() == 1);
  CHECK(f.transversals[0][1] == Cell{1, 2});
}

TEST_CASE("format and parse round trip") {
  DesignFile f;
  f.squares.push_back(cayley_table(GroupSpec::make({2, 2})).square());
  f.partition = partition_boxes(4).as_square();
  f.transversals.push_back({{0, 0}, {1, 2}, {2, 3}, {3, 1}});
  const auto text = format_design(f);
  const auto g = parse_design(text);
  CHECK(g.squares == f.squares);
  CHECK(g.partition == f.partition);
  CHECK(g.transversals == f.transversals);
  CHECK(format_design(g) == text);
}

TEST_CASE("arrays") {
  const auto f = parse_design("NOA 2 3\n1 1 1\n1 2 1\n2 1 2\n2 2 2\n");
  REQUIRE(f.array);
  CHECK(f.array->nearly);
  CHECK(f.array->data == std::vector<int>{0, 0, 0, 0, 1, 0, 1, 0, 1, 1, 1, 1});
  CHECK(parse_design(format_design(f)).array->data == f.array->data);
}

TEST_CASE("parse errors carry line numbers") {
  CHECK_THROWS_WITH_AS(parse_design("3\n1 2 3\n2 3\n"), doctest::Contains("line 3"), ParseError);
  CHECK_THROWS_AS(parse_design("3\n1 2 3\n2 3 1\n"), ParseError);
  CHECK_THROWS_AS(parse_design("2\n1 x\n2 1\n"), ParseError);
  CHECK_THROWS_AS(parse_design("2\n1 3\n2 1\n"), ParseError);
  CHECK_THROWS_AS(parse_design("OA 2\n"), ParseError);
  CHECK_THROWS_AS(read_design_file("/nonexistent/file.txt"), IoError);
}

TEST_CASE("generator specs") {
  CHECK(resolve_square("cayley:3") == cayley_table(GroupSpec::make({3})).square());
  CHECK(resolve_square("cayley:3x3") == resolve_square("kron:(cayley:3,cayley:3)"));
  CHECK(resolve_square("power:(cayley:2,3)") == resolve_square("cayley:2x2x2"));
  CHECK(resolve_square("kron:(cayley:2,kron:(cayley:2,cayley:3))").order() == 12);
  CHECK(resolve_partition("boxes:9") == partition_boxes(9));
  CHECK(resolve_partition("rows:4") == partition_rows(4));
  CHECK(resolve_square("cayley:1").order() == 1);
  CHECK_THROWS_AS(resolve_square("kron:(cayley:3)"), ParseError);
  CHECK_THROWS_AS(resolve_square("cayley:3y"), ParseError);
  CHECK_THROWS_AS(resolve_square("rows:5000"), LimitExceeded);
  CHECK_THROWS_AS(resolve_square("cayley:5", 4), LimitExceeded);
  CHECK(is_generator_spec("boxes:4"));
  CHECK_FALSE(is_generator_spec("boxes.txt"));
}

TEST_CASE("square files") {
  const auto path = std::filesystem::temp_directory_path() / "molscope_square_test.txt";
  write_text_file(path, "4\n1 2 3 4\n2 1 4 3\n3 4 1 2\n4 3 2 1\n");
  CHECK(resolve_square(path.string()) == resolve_square("cayley:2x2"));
  write_text_file(path, "1\n1\n\n1\n1\n");
  CHECK_THROWS_AS(resolve_square(path.string()), ParseError);
  std::filesystem::remove(path);
}
