#pragma once

// Independent reference implementations used to check the library. They
// share no code with it: plain nested loops and std containers only.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace oracle {

using Grid = std::vector<int>;  // row-major, 0-based symbols

/// Every Latin square of order n, cell by cell with a repeated-symbol scan.
inline std::vector<Grid> latin_squares(int n) {
  std::vector<Grid> out;
  Grid g(n * n, -1);
  std::function<void(int)> place = [&](int cell) {
    if (cell == n * n) {
      out.push_back(g);
      return;
    }
    const int r = cell / n, c = cell % n;
    for (int s = 0; s < n; ++s) {
      bool ok = true;
      for (int j = 0; j < c && ok; ++j) ok = g[r * n + j] != s;
      for (int i = 0; i < r && ok; ++i) ok = g[i * n + c] != s;
      if (!ok) continue;
      g[cell] = s;
      place(cell + 1);
      g[cell] = -1;
    }
  };
  place(0);
  return out;
}

inline bool orthogonal(const Grid& a, const Grid& b) {
  std::set<std::pair<int, int>> pairs;
  for (std::size_t i = 0; i < a.size(); ++i) pairs.insert({a[i], b[i]});
  return pairs.size() == a.size();
}

/// Each region (label of `regions`) holds every symbol of g exactly once.
inline bool gerechte(const Grid& g, const Grid& regions) { return orthogonal(regions, g); }

/// Ordered k-tuples of pairwise orthogonal squares from the given pool.
inline std::uint64_t count_tuples(const std::vector<Grid>& pool, int k) {
  std::uint64_t total = 0;
  std::vector<const Grid*> chosen;
  std::function<void()> extend = [&] {
    if (static_cast<int>(chosen.size()) == k) {
      ++total;
      return;
    }
    for (const auto& g : pool) {
      bool ok = true;
      for (const Grid* c : chosen) ok = ok && orthogonal(*c, g);
      if (!ok) continue;
      chosen.push_back(&g);
      extend();
      chosen.pop_back();
    }
  };
  extend();
  return total;
}

inline std::uint64_t count_mates(const Grid& l, const std::vector<Grid>& all) {
  return static_cast<std::uint64_t>(
      std::count_if(all.begin(), all.end(), [&](const Grid& g) { return orthogonal(l, g); }));
}

/// Transversals as column permutations, by trying all n! permutations.
inline std::vector<std::vector<int>> transversals(const Grid& l, int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    std::set<int> syms;
    for (int i = 0; i < n; ++i) syms.insert(l[i * n + p[i]]);
    if (static_cast<int>(syms.size()) == n) out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

inline double integral_I(double n, int d) {
  auto f = [&](double t) { return std::log1p((n - 1) * std::pow(t, d)); };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, 1.0, 15, 1e-14);
}

inline double integral(const std::function<double(double)>& f, double a, double b) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-14);
}

}  // namespace oracle
