#pragma once

// The forest-side complex dual to the hairy one: vertex-colored graphs whose
// colored edges form a forest per color (components counted by the Hodge
// multidegree) and whose non-colored edges form an admissible configuration-
// space monomial covering every vertex.  Generators are built on labeled
// vertices and passed to symmetric-group coinvariants by signed orbit sums;
// the differential contracts colored edges.

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <vector>

#include "hairycalc/arnold.hpp"
#include "hairycalc/linalg.hpp"
#include "hairycalc/signs.hpp"

namespace hairycalc {

struct KoszulParams {
  std::vector<int> m;
  int d = 0;
};

// Labeled generator on Sum k_i vertices; global labels 1..k with the color
// classes contiguous (color 0 first).  Orientation order: colored edges in
// color-then-factor order, then colored components, then non-colored edges.
struct LabeledKoszul {
  std::vector<int> k;             // vertices per color
  std::vector<Monomial> colored;  // one forest monomial per color, global labels
  Monomial noncolored;            // on all vertices, every vertex covered

  int total_vertices() const { return std::accumulate(k.begin(), k.end(), 0); }
  auto operator<=>(const LabeledKoszul&) const = default;
};

using KoszulSum = std::map<LabeledKoszul, Rat>;

inline long koszul_degree(const KoszulParams& p, const std::vector<int>& s, int t, int k) {
  long sum_s = std::accumulate(s.begin(), s.end(), 0L);
  long sum_ms = 0;
  for (std::size_t i = 0; i < s.size(); ++i) sum_ms += static_cast<long>(p.m[i]) * s[i];
  return static_cast<long>(p.d - 1) * t - (k - sum_s) - sum_ms;
}

namespace detail {

inline void koszul_add(KoszulSum& sum, const LabeledKoszul& g, const Rat& c) {
  if (c == 0) return;
  auto it = sum.find(g);
  if (it == sum.end())
    sum.emplace(g, c);
  else {
    it->second += c;
    if (it->second == 0) sum.erase(it);
  }
}

inline std::vector<int> class_offsets(const std::vector<int>& k) {
  std::vector<int> off(k.size() + 1, 0);
  for (std::size_t i = 0; i < k.size(); ++i) off[i + 1] = off[i] + k[i];
  return off;
}

inline bool koszul_connected(const LabeledKoszul& g) {
  const int n = g.total_vertices();
  if (n == 0) return false;
  std::vector<int> parent(n + 1);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  auto join = [&](const Monomial& mono) {
    for (const auto& [i, j] : mono.factors) parent[find(i)] = find(j);
  };
  for (const auto& mono : g.colored) join(mono);
  join(g.noncolored);
  for (int v = 2; v <= n; ++v)
    if (find(v) != find(1)) return false;
  return true;
}

}  // namespace detail

// All labeled generators with k_i vertices, s_i colored components per color,
// and t non-colored edges.  Empty unless s_i <= k_i and the t non-colored
// edges can cover all vertices.
inline std::vector<LabeledKoszul> enumerate_labeled(const KoszulParams& p,
                                                    const std::vector<int>& s, int t,
                                                    const std::vector<int>& kbar,
                                                    bool connected_only) {
  const int r = static_cast<int>(p.m.size());
  if (static_cast<int>(s.size()) != r || static_cast<int>(kbar.size()) != r)
    throw std::invalid_argument("enumerate_labeled: color count mismatch");
  for (int i = 0; i < r; ++i)
    if (s[i] < 0 || kbar[i] < s[i]) return {};
  const int k = std::accumulate(kbar.begin(), kbar.end(), 0);
  if (t < 0) return {};

  // non-colored part: admissible monomials with t edges covering all vertices
  auto covering = admissible_basis(k, true);
  if (t >= static_cast<int>(covering.size()) || covering[t].empty()) return {};
  const auto& noncolored_choices = covering[t];

  // colored part per color: admissible monomials with k_i - s_i edges on the
  // class's labels (generated on 1..k_i, then shifted)
  auto offsets = detail::class_offsets(kbar);
  std::vector<std::vector<Monomial>> colored_choices(r);
  for (int i = 0; i < r; ++i) {
    auto by_edges = admissible_basis(kbar[i], false);
    const int e = kbar[i] - s[i];
    if (e >= static_cast<int>(by_edges.size())) return {};
    for (const auto& mono : by_edges[e]) {
      Monomial shifted = mono;
      for (auto& [a, b] : shifted.factors) {
        a += offsets[i];
        b += offsets[i];
      }
      colored_choices[i].push_back(std::move(shifted));
    }
    if (colored_choices[i].empty()) return {};
  }

  std::vector<LabeledKoszul> out;
  std::vector<Monomial> cur(r);
  auto rec = [&](auto&& self, int color) -> void {
    if (color == r) {
      for (const auto& nc : noncolored_choices) {
        LabeledKoszul g{kbar, cur, nc};
        if (connected_only && !detail::koszul_connected(g)) continue;
        out.push_back(std::move(g));
      }
      return;
    }
    for (const auto& mono : colored_choices[color]) {
      cur[color] = mono;
      self(self, color + 1);
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  return out;
}

// Action of a color-preserving vertex relabeling.  `perm[v]` is the new label
// of vertex v (1-based, preserving color classes).  Each factor is rewritten
// into the admissible basis of its own algebra; the Poincare-duality twist
// multiplies by sgn(sigma_i)^{m_i} per color.
inline KoszulSum act(const LabeledKoszul& g, const std::vector<int>& perm,
                     const KoszulParams& p) {
  const int r = static_cast<int>(p.m.size());
  auto offsets = detail::class_offsets(g.k);
  Rat twist = 1;
  for (int i = 0; i < r; ++i) {
    if (parity(p.m[i]) == 0) continue;
    std::vector<int> seg;
    for (int v = offsets[i] + 1; v <= offsets[i + 1]; ++v) seg.push_back(perm[v] - offsets[i] - 1);
    twist *= permutation_sign(seg);
  }

  auto relabel_reduce = [&](const Monomial& mono, int n) {
    std::vector<std::pair<int, int>> factors;
    for (const auto& [a, b] : mono.factors) factors.emplace_back(perm[a], perm[b]);
    return arnold_reduce(std::move(factors), n);
  };

  std::vector<MonomialSum> colored(r);
  for (int i = 0; i < r; ++i) colored[i] = relabel_reduce(g.colored[i], p.m[i]);
  MonomialSum nc = relabel_reduce(g.noncolored, p.d);

  KoszulSum out;
  std::vector<Monomial> cur(r);
  auto rec = [&](auto&& self, int color, const Rat& coeff) -> void {
    if (coeff == 0) return;
    if (color == r) {
      for (const auto& [mono, c] : nc)
        detail::koszul_add(out, LabeledKoszul{g.k, cur, mono}, coeff * c);
      return;
    }
    for (const auto& [mono, c] : colored[color]) {
      cur[color] = mono;
      self(self, color + 1, coeff * c);
    }
  };
  rec(rec, 0, twist);
  return out;
}

namespace detail {

// Iterates all color-preserving relabelings, invoking fn(perm).
template <typename Fn>
void for_each_relabeling(const std::vector<int>& kbar, Fn&& fn) {
  auto offsets = class_offsets(kbar);
  const int k = offsets.back();
  std::vector<int> perm(k + 1);
  std::iota(perm.begin(), perm.end(), 0);
  auto rec = [&](auto&& self, std::size_t color) -> void {
    if (color == kbar.size()) {
      fn(const_cast<const std::vector<int>&>(perm));
      return;
    }
    std::vector<int> vals;
    for (int v = offsets[color] + 1; v <= offsets[color + 1]; ++v) vals.push_back(v);
    std::sort(vals.begin(), vals.end());
    do {
      for (std::size_t i = 0; i < vals.size(); ++i) perm[offsets[color] + 1 + i] = vals[i];
      self(self, color + 1);
    } while (std::next_permutation(vals.begin(), vals.end()));
    for (int v = offsets[color] + 1; v <= offsets[color + 1]; ++v) perm[v] = v;
  };
  rec(rec, 0);
}

inline SparseMatrix coordinate_matrix(const std::vector<KoszulSum>& vecs,
                                      const std::vector<LabeledKoszul>& basis) {
  std::map<LabeledKoszul, int> index;
  for (std::size_t i = 0; i < basis.size(); ++i) index[basis[i]] = static_cast<int>(i);
  SparseMatrix m;
  m.rows = static_cast<int>(basis.size());
  m.cols = static_cast<int>(vecs.size());
  for (int c = 0; c < m.cols; ++c)
    for (const auto& [g, v] : vecs[c]) {
      auto it = index.find(g);
      if (it == index.end())
        throw internal_error("koszul: vector leaves the enumerated labeled basis");
      m.set(it->second, c, v);
    }
  return m;
}

}  // namespace detail

// Average over the color-preserving symmetric group with the duality twist.
inline KoszulSum symmetrize(const LabeledKoszul& g, const KoszulParams& p) {
  KoszulSum sum;
  long order = 0;
  detail::for_each_relabeling(g.k, [&](const std::vector<int>& perm) {
    ++order;
    for (const auto& [h, c] : act(g, perm, p)) detail::koszul_add(sum, h, c);
  });
  KoszulSum out;
  for (const auto& [h, c] : sum) out.emplace(h, c / order);
  return out;
}

// Basis of the invariant subspace: a maximal independent set of orbit sums.
inline std::vector<KoszulSum> invariant_basis(const std::vector<LabeledKoszul>& labeled,
                                              const KoszulParams& p) {
  std::vector<KoszulSum> chosen;
  int current_rank = 0;
  for (const auto& g : labeled) {
    KoszulSum sym = symmetrize(g, p);
    if (sym.empty()) continue;
    chosen.push_back(std::move(sym));
    int rk = rank(detail::coordinate_matrix(chosen, labeled));
    if (rk == current_rank)
      chosen.pop_back();
    else
      current_rank = rk;
  }
  return chosen;
}

// Contraction of one colored edge per term: endpoints merge, labels close up,
// the non-colored monomial is rewritten (terms with a tadpole or repeated
// factor vanish).  The sign pulls the contracted edge to the front of the
// orientation order, crossing the odd colored edges before it.
inline KoszulSum contraction_differential(const LabeledKoszul& g, const KoszulParams& p) {
  const int r = static_cast<int>(p.m.size());
  KoszulSum out;
  int edges_before = 0;
  for (int i = 0; i < r; ++i) {
    for (std::size_t f = 0; f < g.colored[i].factors.size(); ++f, ++edges_before) {
      const auto [u, v] = g.colored[i].factors[f];  // u < v, same color class
      const int sign = pow_sign(edges_before);
      // merge v into u, then shift labels above v down by one
      auto map = [u = u, v = v](int w) { return w == v ? u : (w > v ? w - 1 : w); };

      std::vector<int> new_k = g.k;
      --new_k[i];
      std::vector<Monomial> colored(r);
      for (int j = 0; j < r; ++j) {
        for (std::size_t ff = 0; ff < g.colored[j].factors.size(); ++ff) {
          if (j == i && ff == f) continue;
          auto [a, b] = g.colored[j].factors[ff];
          colored[j].factors.emplace_back(map(a), map(b));
        }
        if (!colored[j].admissible())
          throw internal_error("contraction_differential: colored forest left the basis");
      }

      std::vector<std::pair<int, int>> nc;
      bool tadpole = false;
      for (const auto& [a, b] : g.noncolored.factors) {
        int na = map(a), nb = map(b);
        if (na == nb) {
          tadpole = true;
          break;
        }
        nc.emplace_back(na, nb);
      }
      if (tadpole) continue;
      for (const auto& [mono, c] : arnold_reduce(std::move(nc), p.d))
        detail::koszul_add(out, LabeledKoszul{new_k, colored, mono}, Rat(sign) * c);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// KQ dimensions: the colored side alone, concentrated in a single degree.

inline Int factorial(int n) {
  Int f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

struct KqResult {
  long degree = 0;
  Int dim = 0;
};

inline KqResult kq_dimension(const std::vector<int>& m, const std::vector<int>& s,
                             const std::vector<int>& kbar) {
  const int r = static_cast<int>(m.size());
  if (static_cast<int>(s.size()) != r || static_cast<int>(kbar.size()) != r)
    throw std::invalid_argument("kq_dimension: color count mismatch");
  const int k = std::accumulate(kbar.begin(), kbar.end(), 0);
  KqResult out;
  for (int i = 0; i < r; ++i) out.degree += static_cast<long>(s[i]) * (m[i] - 1);
  out.degree += k;
  for (int i = 0; i < r; ++i)
    if (s[i] > kbar[i] || s[i] < 0) return out;  // dim 0

  Int dim = factorial(k);
  for (int i = 0; i < r; ++i) dim /= factorial(kbar[i]);
  for (int i = 0; i < r; ++i) {
    auto by_edges = admissible_basis(kbar[i], false);
    const int e = kbar[i] - s[i];
    dim *= e < static_cast<int>(by_edges.size()) ? Int(by_edges[e].size()) : Int(0);
  }
  out.dim = dim;
  return out;
}

// Independent recount from the forest model: partition each color class into
// s_i trees, a tree on c labeled vertices carrying (c-1)! independent classes
// (the top cohomology of its configuration space).
inline KqResult kq_dimension_recount(const std::vector<int>& m, const std::vector<int>& s,
                                     const std::vector<int>& kbar) {
  const int r = static_cast<int>(m.size());
  const int k = std::accumulate(kbar.begin(), kbar.end(), 0);
  KqResult out;
  for (int i = 0; i < r; ++i) out.degree += static_cast<long>(s[i]) * (m[i] - 1);
  out.degree += k;

  // weighted count of set partitions of {1..n} into exactly s blocks,
  // each block of size c weighted by (c-1)!
  auto partition_count = [](int n, int s) {
    if (s < 0 || s > n) return Int(0);
    if (n == 0) return Int(s == 0 ? 1 : 0);
    // place element 1..n one at a time: element j either opens a new block or
    // joins an existing one; joining a block of current size c multiplies the
    // eventual (c-1)! weight, equivalent to the recurrence below
    // f(n, s) = f(n-1, s-1) + (n-1) * f(n-1, s)   [unsigned Stirling, 1st kind]
    std::vector<std::vector<Int>> f(n + 1, std::vector<Int>(s + 1, 0));
    f[0][0] = 1;
    for (int j = 1; j <= n; ++j)
      for (int b = 0; b <= s; ++b) {
        Int v = Int(j - 1) * f[j - 1][b];
        if (b > 0) v += f[j - 1][b - 1];
        f[j][b] = v;
      }
    return f[n][s];
  };

  Int dim = factorial(k);
  for (int i = 0; i < r; ++i) dim /= factorial(kbar[i]);
  for (int i = 0; i < r; ++i) dim *= partition_count(kbar[i], s[i]);
  out.dim = dim;
  return out;
}

// ---------------------------------------------------------------------------
// Block assembly: the coinvariant cochain complex of one (s-bar, t) block,
// graded by total vertex count k (the differential lowers k by one and raises
// the cohomological degree by one).

struct KoszulBlock {
  KoszulParams params;
  std::vector<int> s;
  int t = 0;
  bool connected = false;
  int k_min = 0;  // level j corresponds to k = k_min + j

  struct Level {
    std::vector<std::vector<int>> kbars;
    std::vector<std::vector<LabeledKoszul>> labeled;  // per kbar
    std::vector<std::vector<KoszulSum>> invariants;   // per kbar

    int dim() const {
      int n = 0;
      for (const auto& inv : invariants) n += static_cast<int>(inv.size());
      return n;
    }
  };
  std::vector<Level> levels;
  std::vector<SparseMatrix> diffs;  // diffs[j]: level j+1 -> level j

  long degree_of_level(int j) const {
    return koszul_degree(params, s, t, k_min + j);
  }
};

namespace detail {

inline std::vector<std::vector<int>> kbars_with_total(const std::vector<int>& s, int k) {
  const int r = static_cast<int>(s.size());
  std::vector<std::vector<int>> out;
  std::vector<int> cur(r);
  auto rec = [&](auto&& self, int i, int rem) -> void {
    if (i == r - 1) {
      if (rem >= s[i]) {
        cur[i] = rem;
        out.push_back(cur);
      }
      return;
    }
    for (int v = s[i]; v <= rem; ++v) {
      cur[i] = v;
      self(self, i + 1, rem - v);
    }
  };
  if (r == 0) {
    if (k == 0) out.push_back({});
    return out;
  }
  rec(rec, 0, k);
  return out;
}

// Solve A x = b for x with A given by columns over a labeled basis; throws if
// b is outside the column span.
inline std::vector<Rat> solve_in_span(const std::vector<KoszulSum>& columns,
                                      const std::vector<LabeledKoszul>& basis,
                                      const KoszulSum& b) {
  const int n = static_cast<int>(basis.size());
  const int c = static_cast<int>(columns.size());
  std::map<LabeledKoszul, int> index;
  for (int i = 0; i < n; ++i) index[basis[i]] = i;
  // dense augmented matrix
  std::vector<std::vector<Rat>> a(n, std::vector<Rat>(c + 1, 0));
  for (int j = 0; j < c; ++j)
    for (const auto& [g, v] : columns[j]) a[index.at(g)][j] = v;
  for (const auto& [g, v] : b) {
    auto it = index.find(g);
    if (it == index.end())
      throw internal_error("koszul: differential image leaves the labeled basis");
    a[it->second][c] = v;
  }
  std::vector<int> pivot_row(c, -1);
  int row = 0;
  for (int col = 0; col < c && row < n; ++col) {
    int pr = -1;
    for (int i = row; i < n; ++i)
      if (a[i][col] != 0) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    std::swap(a[row], a[pr]);
    for (int i = 0; i < n; ++i) {
      if (i == row || a[i][col] == 0) continue;
      Rat f = a[i][col] / a[row][col];
      for (int j = col; j <= c; ++j) a[i][j] -= f * a[row][j];
    }
    pivot_row[col] = row;
    ++row;
  }
  std::vector<Rat> x(c, 0);
  for (int col = 0; col < c; ++col)
    if (pivot_row[col] >= 0) x[col] = a[pivot_row[col]][c] / a[pivot_row[col]][col];
  // verify (catches inconsistency and free-column mismatch alike)
  KoszulSum check;
  for (int j = 0; j < c; ++j)
    for (const auto& [g, v] : columns[j]) koszul_add(check, g, x[j] * v);
  for (const auto& [g, v] : b) koszul_add(check, g, -v);
  if (!check.empty())
    throw internal_error("koszul: differential image is not invariant");
  return x;
}

}  // namespace detail

inline KoszulBlock build_koszul_block(const KoszulParams& p, const std::vector<int>& s, int t,
                                      bool connected) {
  KoszulBlock block;
  block.params = p;
  block.s = s;
  block.t = t;
  block.connected = connected;
  const int sum_s = std::accumulate(s.begin(), s.end(), 0);
  const int k_max = 2 * t;
  block.k_min = std::max(sum_s, t == 0 ? 0 : t + 1);
  if (block.k_min > k_max) {
    // possibly only the empty graph (k = 0, t = 0, no hairs)
    block.k_min = 0;
  }

  for (int k = block.k_min; k <= k_max; ++k) {
    KoszulBlock::Level level;
    for (const auto& kbar : detail::kbars_with_total(s, k)) {
      auto labeled = enumerate_labeled(p, s, t, kbar, connected);
      if (labeled.empty()) continue;
      auto inv = invariant_basis(labeled, p);
      if (inv.empty()) continue;
      level.kbars.push_back(kbar);
      level.labeled.push_back(std::move(labeled));
      level.invariants.push_back(std::move(inv));
    }
    block.levels.push_back(std::move(level));
  }

  // differentials: level j+1 (k = k_min + j + 1) -> level j
  for (std::size_t j = 0; j + 1 < block.levels.size(); ++j) {
    const auto& src = block.levels[j + 1];
    const auto& dst = block.levels[j];
    SparseMatrix m;
    m.rows = dst.dim();
    m.cols = src.dim();
    std::map<std::vector<int>, int> dst_slot;  // kbar -> index into dst arrays
    std::vector<int> dst_offset(dst.kbars.size() + 1, 0);
    for (std::size_t q = 0; q < dst.kbars.size(); ++q) {
      dst_slot[dst.kbars[q]] = static_cast<int>(q);
      dst_offset[q + 1] = dst_offset[q] + static_cast<int>(dst.invariants[q].size());
    }
    int col = 0;
    for (std::size_t q = 0; q < src.kbars.size(); ++q) {
      for (const auto& w : src.invariants[q]) {
        // delta of the invariant vector, split by target kbar.  The image
        // represents a class of coinvariants but need not be invariant
        // itself; symmetrizing picks the invariant representative of the
        // same class (the correction lies in the augmentation ideal, which
        // the differential preserves, so the square still vanishes).
        std::map<std::vector<int>, KoszulSum> raw;
        for (const auto& [g, coeff] : w)
          for (const auto& [h, c] : contraction_differential(g, p))
            detail::koszul_add(raw[h.k], h, coeff * c);
        std::map<std::vector<int>, KoszulSum> by_kbar;
        for (const auto& [kbar_img, img] : raw)
          for (const auto& [h, c] : img)
            for (const auto& [h2, c2] : symmetrize(h, p))
              detail::koszul_add(by_kbar[kbar_img], h2, c * c2);
        for (auto& [kbar, vec] : by_kbar) {
          if (vec.empty()) continue;
          auto it = dst_slot.find(kbar);
          if (it == dst_slot.end())
            throw internal_error("koszul: differential hits an empty level");
          int slot = it->second;
          auto x = detail::solve_in_span(dst.invariants[slot], dst.labeled[slot], vec);
          for (std::size_t i = 0; i < x.size(); ++i)
            if (x[i] != 0) m.set(dst_offset[slot] + static_cast<int>(i), col, x[i]);
        }
        ++col;
      }
    }
    block.diffs.push_back(std::move(m));
  }
  return block;
}

}  // namespace hairycalc
