#pragma once

// Work distribution and leaf accounting shared by the searches in search.cpp.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <thread>
#include <vector>

#include "molscope/count_value.hpp"
#include "molscope/search.hpp"

namespace molscope::detail {

/// Every worker walks the same top of the tree. At the split depth each node
/// gets a sequence number and is explored only by the worker holding the
/// matching ticket; tickets come from one shared counter, so every node is
/// explored exactly once.
class WorkSplit {
 public:
  WorkSplit() = default;
  WorkSplit(int depth, std::atomic<std::uint64_t>* next) : depth_(depth), next_(next) {}

  int depth() const noexcept { return depth_; }

  bool claim() {
    if (!next_) return true;
    const std::uint64_t index = seen_++;
    if (!holding_) {
      ticket_ = next_->fetch_add(1, std::memory_order_relaxed);
      holding_ = true;
    }
    if (index != ticket_) return false;
    holding_ = false;
    return true;
  }

 private:
  int depth_ = -1;
  std::atomic<std::uint64_t>* next_ = nullptr;
  std::uint64_t seen_ = 0;
  std::uint64_t ticket_ = 0;
  bool holding_ = false;
};

/// State shared by the workers of one counting run.
struct SharedProgress {
  std::uint64_t threshold = std::numeric_limits<std::uint64_t>::max();
  std::optional<std::chrono::steady_clock::time_point> deadline;
  std::atomic<std::uint64_t> flushed{0};
  std::atomic<bool> stop{false};
  std::atomic<bool> hit_threshold{false};
  std::atomic<bool> hit_deadline{false};
};

/// Counts leaves for one worker, flushing to the shared total so a threshold
/// or deadline can stop every worker.
class CountingLeaf {
 public:
  explicit CountingLeaf(SharedProgress& shared) : shared_(shared) {}

  template <class Searcher>
  bool operator()(const Searcher&) {
    ++pending_;
    if (pending_ >= kFlushEvery ||
        shared_.flushed.load(std::memory_order_relaxed) + pending_ >= shared_.threshold)
      return flush();
    return !shared_.stop.load(std::memory_order_relaxed);
  }

  bool flush() {
    total_.add(pending_);
    const auto now_total =
        shared_.flushed.fetch_add(pending_, std::memory_order_relaxed) + pending_;
    pending_ = 0;
    if (now_total >= shared_.threshold) {
      shared_.hit_threshold = true;
      shared_.stop = true;
    }
    if (shared_.deadline && std::chrono::steady_clock::now() >= *shared_.deadline) {
      shared_.hit_deadline = true;
      shared_.stop = true;
    }
    return !shared_.stop.load(std::memory_order_relaxed);
  }

  /// Periodic check from interior nodes, so sparse subtrees still notice a
  /// stop request or an expired deadline.
  bool poll() {
    if (shared_.deadline && std::chrono::steady_clock::now() >= *shared_.deadline) {
      shared_.hit_deadline = true;
      shared_.stop = true;
    }
    return !shared_.stop.load(std::memory_order_relaxed);
  }

  BigCounter finish() {
    total_.add(pending_);
    shared_.flushed.fetch_add(pending_, std::memory_order_relaxed);
    pending_ = 0;
    return total_;
  }

 private:
  static constexpr std::uint64_t kFlushEvery = 4096;
  SharedProgress& shared_;
  BigCounter total_;
  std::uint64_t pending_ = 0;
};

struct RunTotals {
  BigInt count;
  bool hit_threshold = false;
  bool hit_deadline = false;
};

inline std::uint64_t clamp_threshold(const std::optional<BigInt>& t) {
  if (!t) return std::numeric_limits<std::uint64_t>::max();
  if (*t > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  return t->convert_to<std::uint64_t>();
}

/// Smallest depth whose estimated node count gives every worker plenty of
/// tickets, clamped to [1, total_depth].
inline int choose_split_depth(int branching, unsigned threads, int total_depth) {
  const double want = 64.0 * threads;
  double nodes = std::max(2, branching);
  int depth = 1;
  while (nodes < want && depth < total_depth) {
    nodes *= std::max(2, branching);
    ++depth;
  }
  return std::min(depth, total_depth);
}

/// Runs `make()` searchers, one per worker, each as
/// `searcher.run(CountingLeaf&, WorkSplit&)`. All leaves must sit at
/// total_depth.
template <class Factory>
RunTotals run_counting(Factory&& make, int split_depth, int total_depth, const SearchOptions& opts) {
  SharedProgress shared;
  shared.threshold = clamp_threshold(opts.stop_threshold);
  if (opts.time_budget) shared.deadline = std::chrono::steady_clock::now() + *opts.time_budget;
  unsigned threads = effective_threads(opts.threads);
  if (total_depth < 1 || split_depth < 1 || split_depth > total_depth) threads = 1;

  std::vector<BigCounter> totals(threads);
  if (threads <= 1) {
    auto searcher = make();
    CountingLeaf leaf(shared);
    WorkSplit split;
    searcher.run(leaf, split);
    totals[0] = leaf.finish();
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w)
      pool.emplace_back([&, w] {
        auto searcher = make();
        CountingLeaf leaf(shared);
        WorkSplit split(split_depth, &next);
        searcher.run(leaf, split);
        totals[w] = leaf.finish();
      });
    for (auto& t : pool) t.join();
  }
  BigCounter sum;
  for (const auto& t : totals) sum.add(t);
  return {sum.value(), shared.hit_threshold.load(), shared.hit_deadline.load()};
}

/// Translates raw totals into the reported value.
template <class W>
void apply_totals(CountResult<W>& out, const RunTotals& totals, const SearchOptions& opts) {
  // Decided on the total alone so sequential and parallel runs agree.
  if (opts.stop_threshold && totals.count >= *opts.stop_threshold) {
    out.value = CountValue::exact(*opts.stop_threshold);
    out.exact = false;
  } else if (totals.hit_deadline) {
    out.value = CountValue::exact(totals.count);
    out.exact = false;
    out.budget_exhausted = true;
  } else {
    out.value = CountValue::exact(totals.count);
  }
}

/// Number of witnesses the sequential witness pass should collect.
inline std::uint64_t witness_budget(const SearchOptions& opts) {
  if (!opts.cap) return 0;
  return std::min<std::uint64_t>(*opts.cap, clamp_threshold(opts.stop_threshold));
}

}  // namespace molscope::detail
