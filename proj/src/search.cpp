#include "molscope/search.hpp"

#include <array>
#include <bit>
#include <string>

#include "parallel_search.hpp"

namespace molscope {
namespace {

using detail::WorkSplit;

int order_limit(const SearchOptions& opts, int fallback) {
  return std::min(opts.order_limit.value_or(fallback), kHardOrderLimit);
}

void check_order(int n, const SearchOptions& opts, int fallback, const char* what) {
  const int limit = order_limit(opts, fallback);
  if (n > limit)
    throw LimitExceeded(std::string(what) + ": order " + std::to_string(n) + " exceeds limit " +
                        std::to_string(limit));
}

std::uint64_t full_mask(int n) { return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }

constexpr std::uint64_t kPollEvery = 1u << 16;

/// Leaf adapter for sequential visiting passes.
template <class F>
struct VisitLeaf {
  F f;
  template <class S>
  bool operator()(const S& s) {
    return f(s);
  }
  bool poll() { return true; }
};
template <class F>
VisitLeaf(F) -> VisitLeaf<F>;

// ---------------------------------------------------------------------------
// Extension columns. Appends new_cols columns to a nearly orthogonal array,
// one cell at a time in lexicographic cell order, column after column. For
// the column being built, used[c*n + s] is the set of symbols already paired
// with symbol s of constraint column c; a candidate y at cell l must be absent
// from every used[c*n + value(c, l)].
class ColumnSearch {
 public:
  ColumnSearch(const NearlyOrthArray& base, int new_cols)
      : n_(base.order()), cells_(base.rows()), new_cols_(new_cols), full_(full_mask(base.order())) {
    // Duplicate base columns (v3 = v1 for plain MOLS) impose the same
    // constraint once.
    std::vector<std::vector<int>> distinct;
    for (int c = 0; c < base.width(); ++c) {
      auto col = base.column(c);
      bool dup = false;
      for (const auto& d : distinct) dup = dup || d == col;
      if (!dup) distinct.push_back(std::move(col));
    }
    base_cons_ = static_cast<int>(distinct.size());
    base_idx_.resize(static_cast<std::size_t>(cells_) * base_cons_);
    for (int l = 0; l < cells_; ++l)
      for (int c = 0; c < base_cons_; ++c) base_idx_[l * base_cons_ + c] = c * n_ + distinct[c][l];
    stride_ = (base_cons_ + new_cols_) * n_;
    used_.assign(static_cast<std::size_t>(stride_) * new_cols_, 0);
    values_.assign(static_cast<std::size_t>(cells_) * new_cols_, 0);
  }

  int total_depth() const { return cells_ * new_cols_; }
  int order() const { return n_; }
  std::span<const int> new_column(int j) const {
    return std::span<const int>(values_).subspan(static_cast<std::size_t>(j) * cells_, cells_);
  }
  std::span<const int> new_columns() const { return values_; }

  template <class Leaf>
  void run(Leaf& leaf, WorkSplit& split) {
    dfs(0, leaf, split);
  }

 private:
  template <class Leaf>
  bool dfs(int pos, Leaf& leaf, WorkSplit& split) {
    if (pos == split.depth() && !split.claim()) return true;
    if (pos == total_depth()) return leaf(*this);
    if (++nodes_ % kPollEvery == 0 && !leaf.poll()) return false;

    const int j = pos / cells_;
    const int l = pos % cells_;
    std::uint64_t* used = &used_[static_cast<std::size_t>(j) * stride_];
    const int* bidx = &base_idx_[static_cast<std::size_t>(l) * base_cons_];

    std::uint64_t taken = 0;
    for (int c = 0; c < base_cons_; ++c) taken |= used[bidx[c]];
    for (int jj = 0; jj < j; ++jj) taken |= used[(base_cons_ + jj) * n_ + values_[jj * cells_ + l]];

    std::uint64_t cand = full_ & ~taken;
    while (cand) {
      const int y = std::countr_zero(cand);
      const std::uint64_t bit = cand & (~cand + 1);
      cand ^= bit;
      for (int c = 0; c < base_cons_; ++c) used[bidx[c]] |= bit;
      for (int jj = 0; jj < j; ++jj) used[(base_cons_ + jj) * n_ + values_[jj * cells_ + l]] |= bit;
      values_[j * cells_ + l] = y;
      const bool go_on = dfs(pos + 1, leaf, split);
      for (int c = 0; c < base_cons_; ++c) used[bidx[c]] ^= bit;
      for (int jj = 0; jj < j; ++jj) used[(base_cons_ + jj) * n_ + values_[jj * cells_ + l]] ^= bit;
      if (!go_on) return false;
    }
    return true;
  }

  int n_;
  int cells_;
  int new_cols_;
  std::uint64_t full_;
  int base_cons_ = 0;
  int stride_ = 0;
  std::vector<int> base_idx_;
  std::vector<std::uint64_t> used_;
  std::vector<int> values_;
  std::uint64_t nodes_ = 0;
};

// ---------------------------------------------------------------------------
// Transversals: one cell per row, row by row, with column and symbol masks.
class TransversalSearch {
 public:
  explicit TransversalSearch(const LatinSquare& l)
      : n_(l.order()), square_(l.cells().begin(), l.cells().end()), cols_(n_), full_(full_mask(n_)) {}

  int total_depth() const { return n_; }
  std::span<const int> columns() const { return cols_; }

  template <class Leaf>
  void run(Leaf& leaf, WorkSplit& split) {
    dfs(0, 0, 0, leaf, split);
  }

 private:
  template <class Leaf>
  bool dfs(int row, std::uint64_t col_used, std::uint64_t sym_used, Leaf& leaf, WorkSplit& split) {
    if (row == split.depth() && !split.claim()) return true;
    if (row == n_) return leaf(*this);
    if (++nodes_ % kPollEvery == 0 && !leaf.poll()) return false;
    std::uint64_t cand = full_ & ~col_used;
    while (cand) {
      const int j = std::countr_zero(cand);
      cand &= cand - 1;
      const std::uint64_t sbit = std::uint64_t{1} << square_[row * n_ + j];
      if (sym_used & sbit) continue;
      cols_[row] = j;
      if (!dfs(row + 1, col_used | (std::uint64_t{1} << j), sym_used | sbit, leaf, split))
        return false;
    }
    return true;
  }

  int n_;
  std::vector<int> square_;
  std::vector<int> cols_;
  std::uint64_t full_;
  std::uint64_t nodes_ = 0;
};

std::vector<Cell> transversal_cells(std::span<const int> cols) {
  std::vector<Cell> cells;
  cells.reserve(cols.size());
  for (int i = 0; i < static_cast<int>(cols.size()); ++i) cells.push_back({i, cols[i]});
  return cells;
}

// ---------------------------------------------------------------------------
// Transversal partitions as exact cover: cells are items, transversals are
// options. Every transversal meets row 0 exactly once, so the smallest
// uncovered cell is always the first uncovered cell of row 0 and options are
// grouped by that column.
using CellMask = std::array<std::uint64_t, 4>;  // n <= 16

class PartitionSearch {
 public:
  PartitionSearch(int n, const std::vector<CellMask>& options,
                  const std::vector<std::vector<int>>& by_first_col)
      : n_(n), options_(options), groups_(by_first_col), chosen_(n), full_(full_mask(n)) {}

  int total_depth() const { return n_; }
  std::span<const int> chosen() const { return chosen_; }

  template <class Leaf>
  void run(Leaf& leaf, WorkSplit& split) {
    CellMask covered{};
    dfs(0, covered, 0, leaf, split);
  }

 private:
  template <class Leaf>
  bool dfs(int level, CellMask& covered, std::uint64_t row0, Leaf& leaf, WorkSplit& split) {
    if (level == split.depth() && !split.claim()) return true;
    if (level == n_) return leaf(*this);
    if (++nodes_ % kPollEvery == 0 && !leaf.poll()) return false;
    const int col = std::countr_zero(full_ & ~row0);
    for (int idx : groups_[col]) {
      const CellMask& m = options_[idx];
      if ((m[0] & covered[0]) | (m[1] & covered[1]) | (m[2] & covered[2]) | (m[3] & covered[3]))
        continue;
      for (int w = 0; w < 4; ++w) covered[w] |= m[w];
      chosen_[level] = idx;
      const bool go_on = dfs(level + 1, covered, row0 | (std::uint64_t{1} << col), leaf, split);
      for (int w = 0; w < 4; ++w) covered[w] ^= m[w];
      if (!go_on) return false;
    }
    return true;
  }

  int n_;
  const std::vector<CellMask>& options_;
  const std::vector<std::vector<int>>& groups_;
  std::vector<int> chosen_;
  std::uint64_t full_;
  std::uint64_t nodes_ = 0;
};

NearlyOrthArray empty_system_array(const RegionPartition& p) {
  return system_to_noa(validate_mols(p.order(), {}, p));
}

MolsSystem system_from_columns(int n, std::span<const int> columns, int k,
                               const std::optional<RegionPartition>& partition) {
  const std::size_t cells = static_cast<std::size_t>(n) * n;
  std::vector<LatinSquare> squares;
  for (int j = 0; j < k; ++j) {
    auto col = columns.subspan(j * cells, cells);
    squares.push_back(validate_latin(Square(n, {col.begin(), col.end()})));
  }
  return validate_mols(n, std::move(squares), partition);
}

}  // namespace

unsigned effective_threads(unsigned requested) {
  if (requested != 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

CountResult<Transversal> enumerate_transversals(const LatinSquare& l, const SearchOptions& opts) {
  check_order(l.order(), opts, kTransversalOrderLimit, "enumerate_transversals");
  const int n = l.order();
  CountResult<Transversal> out;
  const int split = detail::choose_split_depth(n - 1, effective_threads(opts.threads), n);
  detail::apply_totals(out,
                       detail::run_counting([&] { return TransversalSearch(l); }, split, n, opts),
                       opts);
  if (const auto budget = detail::witness_budget(opts)) {
    TransversalSearch s(l);
    WorkSplit none;
    VisitLeaf leaf{[&](const TransversalSearch& ts) {
      out.witnesses.emplace_back(l, transversal_cells(ts.columns()));
      return out.witnesses.size() < budget;
    }};
    s.run(leaf, none);
  }
  return out;
}

CountResult<std::vector<Transversal>> count_transversal_partitions(const LatinSquare& l,
                                                                   const SearchOptions& opts) {
  check_order(l.order(), opts, kTransversalOrderLimit, "count_transversal_partitions");
  const int n = l.order();
  if (n > 16) throw LimitExceeded("count_transversal_partitions supports order <= 16");

  std::vector<std::vector<int>> all;
  {
    TransversalSearch s(l);
    WorkSplit none;
    VisitLeaf leaf{[&](const TransversalSearch& ts) {
      all.emplace_back(ts.columns().begin(), ts.columns().end());
      return true;
    }};
    s.run(leaf, none);
  }
  std::vector<CellMask> options(all.size());
  std::vector<std::vector<int>> groups(n);
  for (std::size_t t = 0; t < all.size(); ++t) {
    CellMask m{};
    for (int i = 0; i < n; ++i) {
      const int cell = i * n + all[t][i];
      m[cell / 64] |= std::uint64_t{1} << (cell % 64);
    }
    options[t] = m;
    groups[all[t][0]].push_back(static_cast<int>(t));
  }

  CountResult<std::vector<Transversal>> out;
  const int branching = static_cast<int>(all.size() / std::max(1, n)) + 1;
  const int split = detail::choose_split_depth(branching, effective_threads(opts.threads), n);
  detail::apply_totals(
      out,
      detail::run_counting([&] { return PartitionSearch(n, options, groups); }, split, n, opts),
      opts);
  if (const auto budget = detail::witness_budget(opts)) {
    PartitionSearch s(n, options, groups);
    WorkSplit none;
    VisitLeaf leaf{[&](const PartitionSearch& ps) {
      std::vector<Transversal> parts;
      for (int idx : ps.chosen()) parts.emplace_back(l, transversal_cells(all[idx]));
      out.witnesses.push_back(std::move(parts));
      return out.witnesses.size() < budget;
    }};
    s.run(leaf, none);
  }
  return out;
}

ExtensionCount count_extensions(const NearlyOrthArray& a, const SearchOptions& opts) {
  check_order(a.order(), opts, kExtensionOrderLimit, "count_extensions");
  const int n = a.order();
  ExtensionCount out;
  const int depth = n * n;
  const int split = detail::choose_split_depth(n - 1, effective_threads(opts.threads), depth);
  detail::apply_totals(out,
                       detail::run_counting([&] { return ColumnSearch(a, 1); }, split, depth, opts),
                       opts);
  if (const auto budget = detail::witness_budget(opts)) {
    ColumnSearch s(a, 1);
    WorkSplit none;
    VisitLeaf leaf{[&](const ColumnSearch& cs) {
      auto col = cs.new_column(0);
      out.witnesses.emplace_back(col.begin(), col.end());
      return out.witnesses.size() < budget;
    }};
    s.run(leaf, none);
  }
  return out;
}

CountResult<LatinSquare> count_mates(const LatinSquare& l, const SearchOptions& opts) {
  const int n = l.order();
  auto ext = count_extensions(system_to_noa(validate_mols(n, {l}, partition_rows(n))), opts);
  CountResult<LatinSquare> out{ext.value, ext.exact, ext.budget_exhausted, {}};
  for (auto& col : ext.witnesses) out.witnesses.push_back(validate_latin(Square(n, std::move(col))));
  return out;
}

namespace {

CountResult<MolsSystem> count_systems_impl(const RegionPartition& p, int k, const SearchOptions& opts,
                                           bool attach_partition) {
  if (k < 0) throw InvalidParams("k must be nonnegative");
  check_order(p.order(), opts, kSystemCountOrderLimit, "count_systems");
  const int n = p.order();
  const std::optional<RegionPartition> witness_partition =
      attach_partition ? std::optional<RegionPartition>(p) : std::nullopt;
  CountResult<MolsSystem> out;
  if (k == 0) {
    out.value = CountValue::exact(1);
    if (opts.stop_threshold && *opts.stop_threshold <= 1) out.exact = false;
    if (detail::witness_budget(opts) > 0)
      out.witnesses.push_back(validate_mols(n, {}, witness_partition));
    return out;
  }
  const auto base = empty_system_array(p);
  const int depth = n * n * k;
  const int split = detail::choose_split_depth(n - 1, effective_threads(opts.threads), depth);
  detail::apply_totals(out,
                       detail::run_counting([&] { return ColumnSearch(base, k); }, split, depth, opts),
                       opts);
  if (const auto budget = detail::witness_budget(opts)) {
    ColumnSearch s(base, k);
    WorkSplit none;
    VisitLeaf leaf{[&](const ColumnSearch& cs) {
      out.witnesses.push_back(system_from_columns(n, cs.new_columns(), k, witness_partition));
      return out.witnesses.size() < budget;
    }};
    s.run(leaf, none);
  }
  return out;
}

}  // namespace

CountResult<MolsSystem> count_systems(const RegionPartition& p, int k, const SearchOptions& opts) {
  return count_systems_impl(p, k, opts, true);
}

CountResult<MolsSystem> count_mols(int n, int k, const SearchOptions& opts) {
  if (n < 1) throw InvalidParams("order must be positive");
  return count_systems_impl(partition_rows(n), k, opts, false);
}

void for_each_extension(const NearlyOrthArray& a,
                        const std::function<bool(std::span<const int>)>& visit) {
  ColumnSearch s(a, 1);
  WorkSplit none;
  VisitLeaf leaf{[&](const ColumnSearch& cs) { return visit(cs.new_column(0)); }};
  s.run(leaf, none);
}

void for_each_system(const RegionPartition& p, int k,
                     const std::function<bool(const NearlyOrthArray&)>& visit) {
  if (k < 0) throw InvalidParams("k must be nonnegative");
  const auto base = empty_system_array(p);
  if (k == 0) {
    visit(base);
    return;
  }
  const int n = p.order();
  const std::size_t cells = static_cast<std::size_t>(n) * n;
  ColumnSearch s(base, k);
  WorkSplit none;
  VisitLeaf leaf{[&](const ColumnSearch& cs) {
    std::vector<int> data;
    data.reserve(cells * (k + 3));
    auto cols = cs.new_columns();
    for (std::size_t l = 0; l < cells; ++l) {
      for (int c = 0; c < 3; ++c) data.push_back(base.at(static_cast<int>(l), c));
      for (int j = 0; j < k; ++j) data.push_back(cols[j * cells + l]);
    }
    return visit(NearlyOrthArray::validate(n, k + 3, std::move(data)));
  }};
  s.run(leaf, none);
}

MaxExtensions max_extensions(int n, int k, const SearchOptions& opts) {
  if (n < 1 || k < 0) throw InvalidParams("max_extensions needs n >= 1, k >= 0");
  check_order(n, opts, kMaxExtensionOrderLimit, "max_extensions");
  SearchOptions scan = opts;
  scan.cap.reset();
  scan.stop_threshold.reset();

  std::optional<NearlyOrthArray> best_array;
  BigInt best = -1;
  std::uint64_t examined = 0;
  for_each_system(partition_rows(n), k, [&](const NearlyOrthArray& a) {
    ++examined;
    auto c = count_extensions(a, scan);
    if (c.value.exact_value() > best) {
      best = c.value.exact_value();
      best_array = a;
    }
    return true;
  });
  if (!best_array) throw InvalidParams("no k-MOLS of this order exist");

  SearchOptions final_opts = opts;
  final_opts.stop_threshold.reset();
  auto ext = count_extensions(*best_array, final_opts);
  const auto sys = noa_to_system(*best_array);
  auto plain = validate_mols(n, {sys.squares().begin(), sys.squares().end()});
  return {std::move(ext), std::move(plain), examined};
}

}  // namespace molscope
