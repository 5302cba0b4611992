#pragma once

// Plain-text design files and inline generator specs.
//
// A square block is a line holding n followed by n lines of n 1-based
// entries. A file is a sequence of blocks separated by blank lines:
//
//   3            square (any number of them, in order)
//   1 2 3
//   ...
//   PARTITION    the next square block holds 1-based region labels
//   TRANSVERSAL  following lines are "row col" pairs, 1-based
//   OA n d       n^2 rows of d entries; NOA n d likewise
//
// '#' starts a comment.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "molscope/array_forms.hpp"
#include "molscope/design.hpp"

namespace molscope {

struct ArrayBlock {
  bool nearly = false;
  int order = 0;
  int width = 0;
  std::vector<int> data;  // 0-based, row-major
};

struct DesignFile {
  std::vector<Square> squares;
  std::optional<Square> partition;
  std::vector<std::vector<Cell>> transversals;
  std::optional<ArrayBlock> array;
};

/// Throws ParseError naming the offending line.
DesignFile parse_design(std::string_view text);
/// Throws IoError when the file cannot be read.
DesignFile read_design_file(const std::filesystem::path& path);

std::string format_square(const Square& s);
std::string format_design(const DesignFile& f);
void write_text_file(const std::filesystem::path& path, std::string_view text);

/// True for "cayley:...", "kron:(...)", "power:(...)", "boxes:n", "rows:n".
bool is_generator_spec(std::string_view spec);

/// A generator spec, or a path to a file holding exactly one square.
/// Generated orders are checked against order_limit.
Square resolve_square(std::string_view spec, std::optional<int> order_limit = std::nullopt);
/// Same, read as region labels.
RegionPartition resolve_partition(std::string_view spec, std::optional<int> order_limit = std::nullopt);

}  // namespace molscope
