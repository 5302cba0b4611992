#include "molscope/array_forms.hpp"

#include <string>

namespace molscope {
namespace {

// Returns true iff columns a and b of the array never repeat an ordered pair.
bool columns_orthogonal(const SymbolArray& arr, int a, int b, std::vector<char>& seen) {
  const int n = arr.order();
  seen.assign(static_cast<std::size_t>(n) * n, 0);
  for (int l = 0; l < arr.rows(); ++l) {
    char& slot = seen[arr.at(l, a) * n + arr.at(l, b)];
    if (slot) return false;
    slot = 1;
  }
  return true;
}

[[noreturn]] void noa_failure(const std::string& what, int first, int second = -1) {
  throw ValidationError({Rule::NearlyOrthArray, first, second, -1}, what);
}

}  // namespace

SymbolArray::SymbolArray(int order, int width, std::vector<int> data)
    : order_(order), width_(width), data_(std::move(data)) {
  if (order_ < 1 || width_ < 0) throw InvalidParams("array order/width out of range");
  if (data_.size() != static_cast<std::size_t>(order_) * order_ * width_)
    throw InvalidParams("array needs n^2 * d entries");
  for (int v : data_)
    if (v < 0 || v >= order_) throw InvalidParams("array symbol out of range");
}

std::vector<int> SymbolArray::column(int col) const {
  std::vector<int> out(rows());
  for (int l = 0; l < rows(); ++l) out[l] = at(l, col);
  return out;
}

std::vector<int> coordinate_column(int n, int which) {
  std::vector<int> v(static_cast<std::size_t>(n) * n);
  for (int l = 0; l < n * n; ++l) v[l] = which == 0 ? l / n : l % n;
  return v;
}

OrthArray OrthArray::validate(int order, int width, std::vector<int> data) {
  OrthArray a(order, width, std::move(data));
  std::vector<char> seen;
  for (int i = 0; i < width; ++i)
    for (int j = i + 1; j < width; ++j)
      if (!columns_orthogonal(a, i, j, seen))
        throw ValidationError({Rule::OrthArray, i, j, -1},
                              "columns " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                                  " are not orthogonal");
  return a;
}

NearlyOrthArray NearlyOrthArray::validate(int order, int width, std::vector<int> data) {
  if (width < 3) throw InvalidParams("nearly orthogonal array needs at least 3 columns");
  NearlyOrthArray a(order, width, std::move(data));
  const int n = order;
  for (int l = 0; l < n * n; ++l) {
    if (a.at(l, 0) != l / n) noa_failure("column 1 is not v1 at row " + std::to_string(l + 1), 0);
    if (a.at(l, 1) != l % n) noa_failure("column 2 is not v2 at row " + std::to_string(l + 1), 1);
  }
  std::vector<int> count(n);
  for (int l = 0; l < n * n; ++l) ++count[a.at(l, 2)];
  for (int s = 0; s < n; ++s)
    if (count[s] != n)
      noa_failure("symbol " + std::to_string(s + 1) + " occurs " + std::to_string(count[s]) +
                      " times in column 3",
                  2);
  std::vector<char> seen;
  for (int i = 3; i < width; ++i)
    for (int j = 0; j < i; ++j)
      if (!columns_orthogonal(a, j, i, seen))
        noa_failure("columns " + std::to_string(j + 1) + " and " + std::to_string(i + 1) +
                        " are not orthogonal",
                    j, i);
  return a;
}

OrthArray mols_to_oa(const MolsSystem& sys) {
  if (sys.partition()) throw InvalidParams("mols_to_oa expects a system without a partition");
  const int n = sys.order();
  const int d = static_cast<int>(sys.size()) + 2;
  std::vector<int> data;
  data.reserve(static_cast<std::size_t>(n) * n * d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      data.push_back(i);
      data.push_back(j);
      for (const auto& sq : sys.squares()) data.push_back(sq.at(i, j));
    }
  return OrthArray::validate(n, d, std::move(data));
}

MolsSystem oa_to_mols(const OrthArray& a, std::pair<int, int> rowcol) {
  const auto [rc, cc] = rowcol;
  const int d = a.width();
  if (rc == cc || rc < 0 || cc < 0 || rc >= d || cc >= d)
    throw InvalidParams("invalid coordinate columns");
  const int n = a.order();
  std::vector<LatinSquare> squares;
  for (int col = 0; col < d; ++col) {
    if (col == rc || col == cc) continue;
    std::vector<int> cells(static_cast<std::size_t>(n) * n);
    for (int l = 0; l < a.rows(); ++l) cells[a.at(l, rc) * n + a.at(l, cc)] = a.at(l, col);
    squares.push_back(validate_latin(Square(n, std::move(cells))));
  }
  return validate_mols(n, std::move(squares));
}

NearlyOrthArray system_to_noa(const MolsSystem& sys) {
  if (!sys.partition()) throw InvalidParams("system_to_noa needs a partition");
  const int n = sys.order();
  const int d = static_cast<int>(sys.size()) + 3;
  std::vector<int> data;
  data.reserve(static_cast<std::size_t>(n) * n * d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      data.push_back(i);
      data.push_back(j);
      data.push_back(sys.partition()->region_of(i, j));
      for (const auto& sq : sys.squares()) data.push_back(sq.at(i, j));
    }
  return NearlyOrthArray::validate(n, d, std::move(data));
}

MolsSystem noa_to_system(const NearlyOrthArray& a) {
  const int n = a.order();
  RegionPartition partition(n, a.column(2));
  std::vector<LatinSquare> squares;
  for (int col = 3; col < a.width(); ++col)
    squares.push_back(validate_latin(Square(n, a.column(col))));
  return validate_mols(n, std::move(squares), std::move(partition));
}

bool vectors_orthogonal(std::span<const int> x, std::span<const int> y, int n) {
  const std::size_t len = static_cast<std::size_t>(n) * n;
  if (x.size() != len || y.size() != len)
    throw LengthMismatch("vectors must have length n^2 = " + std::to_string(len));
  std::vector<char> seen(len);
  for (std::size_t l = 0; l < len; ++l) {
    if (x[l] < 0 || x[l] >= n || y[l] < 0 || y[l] >= n) throw InvalidParams("symbol out of range");
    char& slot = seen[x[l] * n + y[l]];
    if (slot) return false;
    slot = 1;
  }
  return true;
}

CellProfile cell_profile(const NearlyOrthArray& a) {
  const int n = a.order();
  // rowreg[i][t] = |row i intersect region t|, likewise for columns.
  std::vector<int> rowreg(static_cast<std::size_t>(n) * n), colreg(rowreg.size());
  for (int l = 0; l < a.rows(); ++l) {
    ++rowreg[a.at(l, 0) * n + a.at(l, 2)];
    ++colreg[a.at(l, 1) * n + a.at(l, 2)];
  }
  CellProfile p{n, std::vector<int>(a.rows()), std::vector<int>(a.rows())};
  for (int l = 0; l < a.rows(); ++l) {
    p.r[l] = rowreg[a.at(l, 0) * n + a.at(l, 2)] - 1;
    p.c[l] = colreg[a.at(l, 1) * n + a.at(l, 2)] - 1;
  }
  return p;
}

NearlyOrthArray append_column(const NearlyOrthArray& a, std::span<const int> column) {
  if (column.size() != static_cast<std::size_t>(a.rows()))
    throw LengthMismatch("column must have n^2 entries");
  const int d = a.width();
  std::vector<int> data;
  data.reserve(static_cast<std::size_t>(a.rows()) * (d + 1));
  for (int l = 0; l < a.rows(); ++l) {
    for (int c = 0; c < d; ++c) data.push_back(a.at(l, c));
    data.push_back(column[l]);
  }
  return NearlyOrthArray::validate(a.order(), d + 1, std::move(data));
}

}  // namespace molscope
