#pragma once

// Orthogonal arrays (strength two, index one) and nearly orthogonal arrays,
// with conversions to and from MOLS systems. Column indices are 0-based:
// columns 0 and 1 of a nearly orthogonal array are v1 and v2, column 2 is the
// region column v3.

#include <span>
#include <utility>
#include <vector>

#include "molscope/design.hpp"

namespace molscope {

/// n^2 x d array over {0, ..., n-1}, stored row-major.
class SymbolArray {
 public:
  int order() const noexcept { return order_; }
  int width() const noexcept { return width_; }
  int rows() const noexcept { return order_ * order_; }
  int at(int row, int col) const { return data_[row * width_ + col]; }
  std::vector<int> column(int col) const;
  std::span<const int> data() const noexcept { return data_; }

  friend bool operator==(const SymbolArray&, const SymbolArray&) = default;

 protected:
  SymbolArray(int order, int width, std::vector<int> data);

  int order_;
  int width_;
  std::vector<int> data_;
};

class OrthArray : public SymbolArray {
 public:
  /// Throws ValidationError(OrthArray) naming the first non-orthogonal column
  /// pair.
  static OrthArray validate(int order, int width, std::vector<int> data);

 private:
  using SymbolArray::SymbolArray;
};

class NearlyOrthArray : public SymbolArray {
 public:
  /// Rechecks every constraint from scratch with a pair-occurrence bitmap.
  static NearlyOrthArray validate(int order, int width, std::vector<int> data);

 private:
  using SymbolArray::SymbolArray;
};

/// Number of other cells sharing the row (r) or the column (c) of each cell
/// and lying in the same region.
struct CellProfile {
  int order = 0;
  std::vector<int> r;
  std::vector<int> c;
};

/// Rows [i, j, L_1(i,j), ..., L_k(i,j)] in lexicographic (i, j) order.
/// The system must not carry a partition.
OrthArray mols_to_oa(const MolsSystem& sys);

/// Coordinatizes by the two given columns; remaining columns, in increasing
/// index order, become the squares.
MolsSystem oa_to_mols(const OrthArray& a, std::pair<int, int> rowcol = {0, 1});

/// Requires a partition; rows [i, j, region(i,j), L_1(i,j), ...].
NearlyOrthArray system_to_noa(const MolsSystem& sys);
MolsSystem noa_to_system(const NearlyOrthArray& a);

/// Throws LengthMismatch unless both have length n^2.
bool vectors_orthogonal(std::span<const int> x, std::span<const int> y, int n);

CellProfile cell_profile(const NearlyOrthArray& a);

/// Validated NOA of width d + 1.
NearlyOrthArray append_column(const NearlyOrthArray& a, std::span<const int> column);

/// v1 = [0..0, 1..1, ...], v2 = [0, 1, ..., n-1, 0, 1, ...].
std::vector<int> coordinate_column(int n, int which);

}  // namespace molscope
