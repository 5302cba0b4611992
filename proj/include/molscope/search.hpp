#pragma once

// Exact enumeration: transversals, transversal partitions, extension columns
// of nearly orthogonal arrays, and k-MOLS / k-system counts.
//
// Every search is a depth-first backtracking over a fixed lexicographic
// assignment order. With threads > 1 the nodes at a fixed split depth are
// handed out to workers; totals are exact sums, so the count does not depend
// on the schedule. Witnesses always come from a sequential pass and are the
// first ones in lexicographic search order.

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "molscope/array_forms.hpp"
#include "molscope/count_value.hpp"
#include "molscope/design.hpp"

namespace molscope {

struct SearchOptions {
  /// Maximum number of witnesses to collect; none collected when unset.
  std::optional<std::uint64_t> cap;
  /// Counting may stop once this many results were found; the result is then
  /// reported as exactly this value with exact == false ("at least").
  std::optional<BigInt> stop_threshold;
  /// 1 runs sequentially; 0 means one worker per hardware thread.
  unsigned threads = 1;
  /// Overrides the operation's default order limit.
  std::optional<int> order_limit;
  /// Wall-clock budget; exceeding it stops the search with a lower bound.
  std::optional<std::chrono::milliseconds> time_budget;
};

template <class Witness>
struct CountResult {
  CountValue value = CountValue::exact(0);
  /// False when the search stopped early; value is then a lower bound.
  bool exact = true;
  bool budget_exhausted = false;
  std::vector<Witness> witnesses;
};

using Column = std::vector<int>;
using ExtensionCount = CountResult<Column>;

/// Default order limits, overridable through SearchOptions::order_limit.
inline constexpr int kTransversalOrderLimit = 16;
inline constexpr int kExtensionOrderLimit = 16;
inline constexpr int kSystemCountOrderLimit = 5;
inline constexpr int kMaxExtensionOrderLimit = 4;
/// Bitmask width bounds every search regardless of overrides.
inline constexpr int kHardOrderLimit = 64;

CountResult<Transversal> enumerate_transversals(const LatinSquare& l, const SearchOptions& opts = {});

/// Unordered partitions of the cells into n disjoint transversals. The block
/// covering the smallest uncovered cell is always chosen next, so each
/// partition is produced once. mates(l) = partitions * n!.
CountResult<std::vector<Transversal>> count_transversal_partitions(const LatinSquare& l,
                                                                   const SearchOptions& opts = {});

/// Columns x such that appending x to a yields a nearly orthogonal array.
ExtensionCount count_extensions(const NearlyOrthArray& a, const SearchOptions& opts = {});

/// Orthogonal mates of l, as extensions of its row-partition array.
CountResult<LatinSquare> count_mates(const LatinSquare& l, const SearchOptions& opts = {});

/// Ordered k-tuples of mutually orthogonal gerechte designs for the partition,
/// by chaining extension columns from the empty system. Witnesses carry the
/// partition.
CountResult<MolsSystem> count_systems(const RegionPartition& p, int k, const SearchOptions& opts = {});

/// L^(k)(n): ordered k-MOLS of order n. Witnesses carry no partition.
CountResult<MolsSystem> count_mols(int n, int k, const SearchOptions& opts = {});

struct MaxExtensions {
  ExtensionCount best;
  MolsSystem witness;
  std::uint64_t systems_examined = 0;
};

/// Maximum extension count over all k-MOLS of order n; the witness is the
/// lexicographically first maximizer.
MaxExtensions max_extensions(int n, int k, const SearchOptions& opts = {});

/// Visits extension columns in lexicographic order until visit returns false.
void for_each_extension(const NearlyOrthArray& a,
                        const std::function<bool(std::span<const int>)>& visit);

/// Visits every k-system gerechte for p, as a validated array of width k + 3,
/// in lexicographic order until visit returns false.
void for_each_system(const RegionPartition& p, int k,
                     const std::function<bool(const NearlyOrthArray&)>& visit);

/// Resolves threads == 0 to the hardware concurrency.
unsigned effective_threads(unsigned requested);

}  // namespace molscope
