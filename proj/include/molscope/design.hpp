#pragma once

// Core domain types: squares, region partitions, transversals and systems of
// mutually orthogonal Latin squares. Symbols, rows, columns and region labels
// are 0-based. Cells are linearized row-major: cell (i, j) has index i*n + j.

#include <optional>
#include <span>
#include <vector>

#include "molscope/errors.hpp"

namespace molscope {

struct Cell {
  int row = 0;
  int col = 0;
  friend bool operator==(const Cell&, const Cell&) = default;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

/// An n x n grid over the symbols {0, ..., n-1}. Not necessarily Latin.
class Square {
 public:
  /// Throws InvalidParams if the grid is not n*n or an entry is out of range.
  Square(int order, std::vector<int> cells);
  static Square from_rows(const std::vector<std::vector<int>>& rows);

  int order() const noexcept { return order_; }
  int at(int row, int col) const { return cells_[row * order_ + col]; }
  int at(Cell c) const { return at(c.row, c.col); }
  /// Row-major flattening; entry l is the symbol of cell l.
  std::span<const int> cells() const noexcept { return cells_; }

  friend bool operator==(const Square&, const Square&) = default;

 private:
  int order_;
  std::vector<int> cells_;
};

/// A Square in which every symbol occurs once per row and once per column.
/// Only obtainable through validate_latin.
class LatinSquare {
 public:
  int order() const noexcept { return square_.order(); }
  int at(int row, int col) const { return square_.at(row, col); }
  int at(Cell c) const { return square_.at(c); }
  std::span<const int> cells() const noexcept { return square_.cells(); }
  const Square& square() const noexcept { return square_; }

  friend bool operator==(const LatinSquare&, const LatinSquare&) = default;

 private:
  friend LatinSquare validate_latin(const Square&);
  explicit LatinSquare(Square s) : square_(std::move(s)) {}
  Square square_;
};

/// Partition of the n^2 cells into n regions of n cells each.
class RegionPartition {
 public:
  /// Throws ValidationError(UnbalancedRegions) if a region does not have n cells.
  RegionPartition(int order, std::vector<int> region_of);

  int order() const noexcept { return order_; }
  int region_of(int row, int col) const { return labels_[row * order_ + col]; }
  std::span<const int> labels() const noexcept { return labels_; }
  /// The square B with B(i,j) = region of (i,j).
  Square as_square() const { return Square(order_, labels_); }

  friend bool operator==(const RegionPartition&, const RegionPartition&) = default;

 private:
  int order_;
  std::vector<int> labels_;
};

/// A set of cells that is a transversal of some Latin square. Cells are kept
/// sorted.
class Transversal {
 public:
  /// Throws NotATransversal unless is_transversal(square, cells).
  Transversal(const LatinSquare& square, std::vector<Cell> cells);

  int order() const noexcept { return order_; }
  std::span<const Cell> cells() const noexcept { return cells_; }

  friend bool operator==(const Transversal&, const Transversal&) = default;
  friend auto operator<=>(const Transversal& a, const Transversal& b) {
    return a.cells_ <=> b.cells_;
  }

 private:
  int order_;
  std::vector<Cell> cells_;
};

/// Ordered k-MOLS, optionally gerechte with respect to a shared partition.
/// Only obtainable through validate_mols.
class MolsSystem {
 public:
  int order() const noexcept { return order_; }
  std::size_t size() const noexcept { return squares_.size(); }
  std::span<const LatinSquare> squares() const noexcept { return squares_; }
  const std::optional<RegionPartition>& partition() const noexcept { return partition_; }

  friend bool operator==(const MolsSystem&, const MolsSystem&) = default;

 private:
  friend MolsSystem validate_mols(int, std::vector<LatinSquare>,
                                  std::optional<RegionPartition>);
  MolsSystem(int n, std::vector<LatinSquare> s, std::optional<RegionPartition> p)
      : order_(n), squares_(std::move(s)), partition_(std::move(p)) {}

  int order_;
  std::vector<LatinSquare> squares_;
  std::optional<RegionPartition> partition_;
};

/// Rows are scanned first, then columns, each in increasing index; the first
/// repeated symbol is reported.
LatinSquare validate_latin(const Square& s);

bool check_orthogonal(const LatinSquare& a, const LatinSquare& b);
/// Same pair-distinctness test, second argument need not be Latin.
bool check_orthogonal_to_square(const LatinSquare& a, const Square& b);
/// Raw form used by the other two; also accepts a non-Latin first argument.
bool squares_orthogonal(const Square& a, const Square& b);

bool validate_gerechte(const LatinSquare& l, const RegionPartition& p);

/// Rejects k > n-1 before any pair check, then pairs (i, j) in lexicographic
/// order, then gerechte checks in square order.
MolsSystem validate_mols(int order, std::vector<LatinSquare> squares,
                         std::optional<RegionPartition> partition = std::nullopt);

bool is_transversal(const LatinSquare& l, std::span<const Cell> cells);

RegionPartition partition_rows(int n);
/// Throws NotPerfectSquare unless n = m^2.
RegionPartition partition_boxes(int n);
/// Symbol classes of b; throws ValidationError(UnbalancedRegions) when a
/// symbol does not occur exactly n times.
RegionPartition partition_from_square(const Square& b);

/// S_n with S_n(i,j) = i.
Square row_index_square(int n);
/// Transpose of S_n.
Square column_index_square(int n);

/// Returns m if n = m*m, otherwise nullopt.
std::optional<int> exact_sqrt(int n);

}  // namespace molscope
