#pragma once

// The Arnold algebra H^*(C(k, R^n), Q): generators g_{ij} of degree n-1 with
// g_{ij} = (-1)^n g_{ji}, g_{ij}^2 = 0 and the three-term Arnold relation.
// Admissible monomials (factors (i,j) with i < j and pairwise distinct
// targets j) form a basis; reduce() rewrites arbitrary products into it.

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "hairycalc/rational.hpp"

namespace hairycalc {

// A product of generators g_{ij}; factors are kept sorted by (target, source).
struct Monomial {
  std::vector<std::pair<int, int>> factors;  // (source i, target j), i < j

  int edge_count() const { return static_cast<int>(factors.size()); }
  auto operator<=>(const Monomial&) const = default;

  bool admissible() const {
    std::set<int> targets;
    for (const auto& [i, j] : factors) {
      if (i >= j) return false;
      if (!targets.insert(j).second) return false;
    }
    return true;
  }

  // Vertices (1-based labels) touched by some factor.
  std::set<int> support() const {
    std::set<int> s;
    for (const auto& [i, j] : factors) {
      s.insert(i);
      s.insert(j);
    }
    return s;
  }
};

using MonomialSum = std::map<Monomial, Rat>;

namespace detail {

inline void add_term(MonomialSum& sum, const Monomial& m, const Rat& c) {
  if (c == 0) return;
  auto it = sum.find(m);
  if (it == sum.end())
    sum.emplace(m, c);
  else {
    it->second += c;
    if (it->second == 0) sum.erase(it);
  }
}

// Sort factors by (target, source); returns the permutation sign when the
// factor degree n-1 is odd, +1 otherwise.  Duplicate factors make the whole
// monomial zero (g^2 = 0), signalled by returning 0.
inline int sort_factors(std::vector<std::pair<int, int>>& f, int n) {
  int sign = 1;
  const bool odd = is_odd(n - 1);
  // insertion sort, counting swaps
  for (std::size_t i = 1; i < f.size(); ++i) {
    auto key = f[i];
    std::size_t j = i;
    while (j > 0 && std::make_pair(f[j - 1].second, f[j - 1].first) >
                        std::make_pair(key.second, key.first)) {
      f[j] = f[j - 1];
      --j;
      if (odd) sign = -sign;
    }
    f[j] = key;
  }
  for (std::size_t i = 1; i < f.size(); ++i)
    if (f[i] == f[i - 1]) return 0;
  return sign;
}

}  // namespace detail

// Rewrites a product of generators (any orientation, possibly inadmissible)
// into the admissible basis.  Tadpole factors g_{ii} are invalid input.
inline MonomialSum arnold_reduce(std::vector<std::pair<int, int>> factors, int n, Rat coeff = 1) {
  for (auto& [i, j] : factors) {
    if (i == j) throw std::invalid_argument("arnold_reduce: tadpole factor g_{ii}");
    if (i > j) {
      std::swap(i, j);
      if (is_odd(n)) coeff = -coeff;
    }
  }
  {
    int s = detail::sort_factors(factors, n);
    if (s == 0) return {};
    coeff *= s;
  }

  MonomialSum result;
  // worklist of terms not yet in normal form
  std::vector<std::pair<std::vector<std::pair<int, int>>, Rat>> work;
  work.emplace_back(std::move(factors), coeff);
  while (!work.empty()) {
    auto [f, c] = std::move(work.back());
    work.pop_back();
    // find two factors sharing a target
    std::size_t p1 = 0, p2 = 0;
    bool found = false;
    for (std::size_t i = 0; i + 1 < f.size(); ++i)
      if (f[i].second == f[i + 1].second) {
        p1 = i;
        p2 = i + 1;
        found = true;
        break;
      }
    if (!found) {
      Monomial m{std::move(f)};
      detail::add_term(result, m, c);
      continue;
    }
    // g_{ac} g_{bc} = g_{ab} g_{bc} - g_{ab} g_{ac},  a < b < c.
    // Factors are adjacent and sorted, so a = f[p1].first <= b = f[p2].first;
    // equality would be a duplicate factor, excluded by sorting.
    int a = f[p1].first, b = f[p2].first, cc = f[p1].second;
    // Pulling the adjacent pair to the front is an even permutation (2*p1
    // transpositions), so no sign regardless of the factor parity.
    std::vector<std::pair<int, int>> rest;
    rest.reserve(f.size() - 2);
    for (std::size_t i = 0; i < f.size(); ++i)
      if (i != p1 && i != p2) rest.push_back(f[i]);
    for (int variant = 0; variant < 2; ++variant) {
      std::vector<std::pair<int, int>> nf;
      nf.reserve(f.size());
      nf.emplace_back(a, b);
      nf.emplace_back(variant == 0 ? b : a, cc);
      nf.insert(nf.end(), rest.begin(), rest.end());
      int s = detail::sort_factors(nf, n);
      if (s == 0) continue;
      work.emplace_back(std::move(nf), c * s * (variant == 0 ? 1 : -1));
    }
  }
  return result;
}

// All admissible monomials on k labeled points (labels 1..k), grouped by edge
// count e (the cohomological degree is (n-1)e, independent of the basis).  If
// cover_all is set, only monomials touching every point are kept (cross
// effect).
inline std::vector<std::vector<Monomial>> admissible_basis(int k, bool cover_all) {
  if (k < 0) throw std::invalid_argument("admissible_basis: k < 0");
  std::vector<std::vector<Monomial>> by_edges(k == 0 ? 1 : k);
  std::vector<std::pair<int, int>> cur;
  // choose, for each target j = 2..k, either no edge or one source i < j
  auto rec = [&](auto&& self, int j) -> void {
    if (j > k) {
      Monomial m{cur};
      if (cover_all) {
        auto sup = m.support();
        if (static_cast<int>(sup.size()) != k) return;
        if (k == 1) return;  // a single point can never be covered
      }
      by_edges[m.edge_count()].push_back(m);
      return;
    }
    self(self, j + 1);
    for (int i = 1; i < j; ++i) {
      cur.emplace_back(i, j);
      self(self, j + 1);
      cur.pop_back();
    }
  };
  if (k == 0) {
    by_edges[0].push_back(Monomial{});  // the empty monomial covers the empty set
  } else {
    rec(rec, 2);
  }
  for (auto& v : by_edges) std::sort(v.begin(), v.end());
  return by_edges;
}

}  // namespace hairycalc
