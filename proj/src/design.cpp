#include "molscope/design.hpp"

#include <algorithm>
#include <string>

namespace molscope {

std::string_view rule_definition(Rule rule) {
  switch (rule) {
    case Rule::LatinRow:
    case Rule::LatinColumn:
      return "Latin square: each symbol exactly once in every row and column";
    case Rule::NotOrthogonal:
      return "orthogonality: every ordered symbol pair occurs exactly once";
    case Rule::NotGerechte:
      return "gerechte design: each symbol exactly once in every region";
    case Rule::TooManySquares:
      return "MOLS size: at most n-1 mutually orthogonal Latin squares of order n, N(n) <= n-1";
    case Rule::UnbalancedRegions:
      return "region partition: n regions of exactly n cells";
    case Rule::OrthArray:
      return "orthogonal array: all pairs of columns orthogonal";
    case Rule::NearlyOrthArray:
      return "nearly orthogonal array: columns v1, v2, balanced v3, later columns orthogonal to all";
    case Rule::Transversal:
      return "transversal: n cells with distinct rows, columns and symbols";
  }
  return "unknown rule";
}

Square::Square(int order, std::vector<int> cells) : order_(order), cells_(std::move(cells)) {
  if (order_ < 1) throw InvalidParams("square order must be positive");
  if (cells_.size() != static_cast<std::size_t>(order_) * order_)
    throw InvalidParams("square of order " + std::to_string(order_) + " needs " +
                        std::to_string(order_ * order_) + " cells");
  for (int v : cells_)
    if (v < 0 || v >= order_)
      throw InvalidParams("symbol " + std::to_string(v) + " out of range for order " +
                          std::to_string(order_));
}

Square Square::from_rows(const std::vector<std::vector<int>>& rows) {
  const int n = static_cast<int>(rows.size());
  std::vector<int> cells;
  cells.reserve(rows.size() * rows.size());
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != n) throw InvalidParams("square is not n x n");
    cells.insert(cells.end(), r.begin(), r.end());
  }
  return Square(n, std::move(cells));
}

LatinSquare validate_latin(const Square& s) {
  const int n = s.order();
  std::vector<char> seen(n);
  for (int i = 0; i < n; ++i) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int j = 0; j < n; ++j) {
      const int v = s.at(i, j);
      if (seen[v])
        throw ValidationError({Rule::LatinRow, i, -1, v},
                              "symbol " + std::to_string(v + 1) + " repeats in row " +
                                  std::to_string(i + 1));
      seen[v] = 1;
    }
  }
  for (int j = 0; j < n; ++j) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int i = 0; i < n; ++i) {
      const int v = s.at(i, j);
      if (seen[v])
        throw ValidationError({Rule::LatinColumn, j, -1, v},
                              "symbol " + std::to_string(v + 1) + " repeats in column " +
                                  std::to_string(j + 1));
      seen[v] = 1;
    }
  }
  return LatinSquare(s);
}

bool squares_orthogonal(const Square& a, const Square& b) {
  if (a.order() != b.order()) throw OrderMismatch(a.order(), b.order());
  const int n = a.order();
  std::vector<char> seen(static_cast<std::size_t>(n) * n);
  auto ac = a.cells();
  auto bc = b.cells();
  for (std::size_t l = 0; l < ac.size(); ++l) {
    char& slot = seen[ac[l] * n + bc[l]];
    if (slot) return false;
    slot = 1;
  }
  return true;
}

bool check_orthogonal(const LatinSquare& a, const LatinSquare& b) {
  return squares_orthogonal(a.square(), b.square());
}

bool check_orthogonal_to_square(const LatinSquare& a, const Square& b) {
  return squares_orthogonal(a.square(), b);
}

bool validate_gerechte(const LatinSquare& l, const RegionPartition& p) {
  if (l.order() != p.order()) throw OrderMismatch(l.order(), p.order());
  const int n = l.order();
  std::vector<char> seen(static_cast<std::size_t>(n) * n);
  auto sym = l.cells();
  auto reg = p.labels();
  for (std::size_t c = 0; c < sym.size(); ++c) {
    char& slot = seen[reg[c] * n + sym[c]];
    if (slot) return false;
    slot = 1;
  }
  return true;
}

MolsSystem validate_mols(int order, std::vector<LatinSquare> squares,
                         std::optional<RegionPartition> partition) {
  if (order < 1) throw InvalidParams("order must be positive");
  for (const auto& s : squares)
    if (s.order() != order) throw OrderMismatch(order, s.order());
  if (partition && partition->order() != order) throw OrderMismatch(order, partition->order());

  const int k = static_cast<int>(squares.size());
  // The bound needs n >= 2; at n = 1 the single square is orthogonal to itself.
  if (order >= 2 && k > order - 1)
    throw ValidationError({Rule::TooManySquares, k, order - 1, -1},
                          std::to_string(k) + " squares of order " + std::to_string(order) +
                              " exceed N(n) <= n-1 = " + std::to_string(order - 1));
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (!check_orthogonal(squares[i], squares[j]))
        throw ValidationError({Rule::NotOrthogonal, i, j, -1},
                              "squares " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                                  " are not orthogonal");
  if (partition)
    for (int i = 0; i < k; ++i)
      if (!validate_gerechte(squares[i], *partition))
        throw ValidationError({Rule::NotGerechte, i, -1, -1},
                              "square " + std::to_string(i + 1) +
                                  " is not a gerechte design for the partition");
  return MolsSystem(order, std::move(squares), std::move(partition));
}

bool is_transversal(const LatinSquare& l, std::span<const Cell> cells) {
  const int n = l.order();
  if (static_cast<int>(cells.size()) != n) return false;
  std::vector<char> rows(n), cols(n), syms(n);
  for (const Cell& c : cells) {
    if (c.row < 0 || c.row >= n || c.col < 0 || c.col >= n) return false;
    const int s = l.at(c);
    if (rows[c.row] || cols[c.col] || syms[s]) return false;
    rows[c.row] = cols[c.col] = syms[s] = 1;
  }
  return true;
}

Transversal::Transversal(const LatinSquare& square, std::vector<Cell> cells)
    : order_(square.order()), cells_(std::move(cells)) {
  if (!is_transversal(square, cells_)) throw NotATransversal("cells do not form a transversal");
  std::sort(cells_.begin(), cells_.end());
}

RegionPartition::RegionPartition(int order, std::vector<int> region_of)
    : order_(order), labels_(std::move(region_of)) {
  if (order_ < 1) throw InvalidParams("partition order must be positive");
  if (labels_.size() != static_cast<std::size_t>(order_) * order_)
    throw InvalidParams("partition needs n^2 labels");
  std::vector<int> size(order_);
  for (int r : labels_) {
    if (r < 0 || r >= order_)
      throw InvalidParams("region label " + std::to_string(r) + " out of range");
    ++size[r];
  }
  for (int r = 0; r < order_; ++r)
    if (size[r] != order_)
      throw ValidationError({Rule::UnbalancedRegions, r, size[r], -1},
                            "region " + std::to_string(r + 1) + " has " + std::to_string(size[r]) +
                                " cells, expected " + std::to_string(order_));
}

Square row_index_square(int n) {
  std::vector<int> cells(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) cells[i * n + j] = i;
  return Square(n, std::move(cells));
}

Square column_index_square(int n) {
  std::vector<int> cells(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) cells[i * n + j] = j;
  return Square(n, std::move(cells));
}

std::optional<int> exact_sqrt(int n) {
  for (int m = 0; m * m <= n; ++m)
    if (m * m == n) return m;
  return std::nullopt;
}

RegionPartition partition_rows(int n) {
  auto s = row_index_square(n);
  return RegionPartition(n, {s.cells().begin(), s.cells().end()});
}

RegionPartition partition_boxes(int n) {
  const auto m = exact_sqrt(n);
  if (!m || n < 1) throw NotPerfectSquare(n);
  std::vector<int> labels(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) labels[i * n + j] = *m * (i / *m) + j / *m;
  return RegionPartition(n, std::move(labels));
}

RegionPartition partition_from_square(const Square& b) {
  return RegionPartition(b.order(), {b.cells().begin(), b.cells().end()});
}

}  // namespace molscope
