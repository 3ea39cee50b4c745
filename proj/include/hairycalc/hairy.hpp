#pragma once

// The hairy graph complex: graphs with valence-1 colored external vertices
// ("hairs") and valence >= 3 internal vertices, tadpoles and parallel edges
// allowed.  Canonicalization fixes a representative per isomorphism class
// and tracks the orientation sign; the differential expands internal
// vertices.

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "hairycalc/linalg.hpp"
#include "hairycalc/signs.hpp"

namespace hairycalc {

struct HairyParams {
  std::vector<int> m;  // one source dimension per color
  int d = 0;           // ambient dimension
};

// Presentation of a generator.  Vertices are 0..nE-1 (external, colors
// non-decreasing) then nE..nE+nI-1 (internal).  The orientation order is
// implied: external vertices, internal vertices, then edges in list order,
// each edge oriented tail -> head.
struct HairyGraph {
  std::vector<int> ext_color;  // non-decreasing color per external vertex
  int internal_count = 0;
  std::vector<std::pair<int, int>> edges;

  int ext_count() const { return static_cast<int>(ext_color.size()); }
  int vertex_count() const { return ext_count() + internal_count; }
  int edge_count() const { return static_cast<int>(edges.size()); }

  auto operator<=>(const HairyGraph&) const = default;
};

inline long hairy_degree(const HairyGraph& g, const HairyParams& p) {
  long deg = static_cast<long>(p.d - 1) * g.edge_count() -
             static_cast<long>(p.d) * g.internal_count;
  for (int c : g.ext_color) {
    if (c < 0 || c >= static_cast<int>(p.m.size()))
      throw std::invalid_argument("hairy_degree: color index out of range");
    deg -= p.m[c];
  }
  return deg;
}

struct HairyGradings {
  std::vector<int> s;  // hairs per color
  int genus = 0;       // first Betti number
  int complexity = 0;  // Betti number after gluing all hairs to a point
};

inline HairyGradings hairy_gradings(const HairyGraph& g, int color_count) {
  HairyGradings out;
  out.s.assign(color_count, 0);
  for (int c : g.ext_color) {
    if (c < 0 || c >= color_count)
      throw std::invalid_argument("hairy_gradings: color index out of range");
    ++out.s[c];
  }
  out.genus = g.edge_count() - g.vertex_count() + 1;
  out.complexity = out.genus + g.ext_count() - 1;
  return out;
}

inline bool hairy_connected(const HairyGraph& g) {
  const int n = g.vertex_count();
  if (n == 0) return false;
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const auto& [a, b] : g.edges) parent[find(a)] = find(b);
  for (int v = 1; v < n; ++v)
    if (find(v) != find(0)) return false;
  return true;
}

inline void hairy_validate(const HairyGraph& g, const HairyParams& p) {
  const int nE = g.ext_count();
  if (nE == 0) throw std::invalid_argument("hairy graph: no external vertices");
  if (!std::is_sorted(g.ext_color.begin(), g.ext_color.end()))
    throw std::invalid_argument("hairy graph: external colors must be sorted");
  for (int c : g.ext_color)
    if (c < 0 || c >= static_cast<int>(p.m.size()))
      throw std::invalid_argument("hairy graph: color index out of range");
  std::vector<int> valence(g.vertex_count(), 0);
  for (const auto& [a, b] : g.edges) {
    if (a < 0 || a >= g.vertex_count() || b < 0 || b >= g.vertex_count())
      throw std::invalid_argument("hairy graph: edge endpoint out of range");
    ++valence[a];
    ++valence[b];
  }
  for (int v = 0; v < nE; ++v)
    if (valence[v] != 1) throw std::invalid_argument("hairy graph: external valence must be 1");
  for (int v = nE; v < g.vertex_count(); ++v)
    if (valence[v] < 3) throw std::invalid_argument("hairy graph: internal valence must be >= 3");
  if (!hairy_connected(g)) throw std::invalid_argument("hairy graph: not connected");
}

// Canonical representative: edges normalized to (min, max) and sorted, the
// lexicographically least over all relabelings that permute hairs within a
// color class and internal vertices arbitrarily.  zero is set when some
// automorphism acts by -1 on the orientation.
struct CanonicalHairy {
  HairyGraph graph;
  bool zero = false;

  auto operator<=>(const CanonicalHairy&) const = default;
};

namespace detail {

// Relabel, normalize and sort the edge list; the sign relates the original
// presentation to the relabeled one.  `skip_signs` is set for generators
// already known to be zero, where duplicate edges make the sort sign
// ill-defined.
inline std::pair<std::vector<std::pair<int, int>>, int> relabel_edges(
    const HairyGraph& g, const std::vector<int>& perm, const HairyParams& p, bool skip_signs) {
  int sign = 1;
  std::vector<std::pair<int, int>> e;
  e.reserve(g.edges.size());
  for (const auto& [a, b] : g.edges) {
    int na = perm[a], nb = perm[b];
    if (na > nb) {
      std::swap(na, nb);
      if (is_odd(p.d)) sign = -sign;  // edge reversal in degree d-1
    }
    e.emplace_back(na, nb);
  }
  if (!skip_signs && parity(p.d) == 0) {
    // edges have odd degree d-1: the sorting permutation contributes its sign
    long inversions = 0;
    for (std::size_t i = 0; i < e.size(); ++i)
      for (std::size_t j = i + 1; j < e.size(); ++j)
        if (e[j] < e[i]) ++inversions;
    if (is_odd(inversions)) sign = -sign;
  }
  std::sort(e.begin(), e.end());
  return {std::move(e), sign};
}

// Vertex-relabeling sign: Koszul sign of permuting hairs within each color
// class (degree -m_c) and internal vertices among themselves (degree -d).
inline int vertex_perm_sign(const HairyGraph& g, const std::vector<int>& perm,
                            const HairyParams& p) {
  int sign = 1;
  const int nE = g.ext_count();
  int start = 0;
  while (start < nE) {
    int end = start;
    while (end < nE && g.ext_color[end] == g.ext_color[start]) ++end;
    if (is_odd(p.m[g.ext_color[start]])) {
      std::vector<int> seg(perm.begin() + start, perm.begin() + end);
      sign *= permutation_sign(seg);
    }
    start = end;
  }
  if (is_odd(p.d)) {
    std::vector<int> seg(perm.begin() + nE, perm.end());
    sign *= permutation_sign(seg);
  }
  return sign;
}

}  // namespace detail

inline std::pair<CanonicalHairy, int> canonicalize(const HairyGraph& g, const HairyParams& p) {
  hairy_validate(g, p);
  const int nE = g.ext_count();
  const int n = g.vertex_count();

  // Tadpole reversal and parallel-edge transposition are automorphisms whose
  // signs depend only on the parity of d.
  bool zero = false;
  {
    std::vector<std::pair<int, int>> norm;
    for (auto [a, b] : g.edges) {
      if (a > b) std::swap(a, b);
      if (a == b && is_odd(p.d)) zero = true;  // tadpole flip sign (-1)^d
      norm.emplace_back(a, b);
    }
    std::sort(norm.begin(), norm.end());
    if (parity(p.d) == 0 &&
        std::adjacent_find(norm.begin(), norm.end()) != norm.end())
      zero = true;  // swapping parallel edges transposes two odd elements
  }

  std::optional<std::vector<std::pair<int, int>>> best;
  int best_sign = 1;

  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);

  // Segments of interchangeable vertices: each color class, then internals.
  std::vector<std::pair<int, int>> segments;  // [start, end)
  {
    int start = 0;
    while (start < nE) {
      int end = start;
      while (end < nE && g.ext_color[end] == g.ext_color[start]) ++end;
      segments.emplace_back(start, end);
      start = end;
    }
    if (nE < n) segments.emplace_back(nE, n);
  }

  auto evaluate = [&]() {
    auto [edges, edge_sign] = detail::relabel_edges(g, perm, p, zero);
    int sign = edge_sign * detail::vertex_perm_sign(g, perm, p);
    if (!best || edges < *best) {
      best = std::move(edges);
      best_sign = sign;
    } else if (edges == *best && sign != best_sign) {
      zero = true;  // automorphism acting by -1
    }
  };

  auto rec = [&](auto&& self, std::size_t seg) -> void {
    if (seg == segments.size()) {
      evaluate();
      return;
    }
    auto [start, end] = segments[seg];
    std::vector<int> vals(perm.begin() + start, perm.begin() + end);
    std::sort(vals.begin(), vals.end());
    do {
      std::copy(vals.begin(), vals.end(), perm.begin() + start);
      self(self, seg + 1);
    } while (std::next_permutation(vals.begin(), vals.end()));
    std::iota(perm.begin() + start, perm.begin() + end, start);
  };
  rec(rec, 0);

  CanonicalHairy out;
  out.graph = HairyGraph{g.ext_color, g.internal_count, *best};
  out.zero = zero;
  return {out, zero ? 1 : best_sign};
}

// All nonzero canonical generators with the given hair multidegree and
// complexity, across every admissible internal-vertex count.  When requested,
// counts the isomorphism classes discarded for having a sign-reversing
// automorphism.
inline std::vector<CanonicalHairy> enumerate_generators(const HairyParams& p,
                                                        const std::vector<int>& s, int t,
                                                        long* zeros_discarded = nullptr) {
  if (s.size() != p.m.size())
    throw std::invalid_argument("enumerate_generators: weight/color count mismatch");
  for (int si : s)
    if (si < 0) throw std::invalid_argument("enumerate_generators: negative hair count");
  std::set<CanonicalHairy> found;
  std::set<CanonicalHairy> zeros;
  const int nE = std::accumulate(s.begin(), s.end(), 0);
  const int genus = t - nE + 1;
  if (nE < 1 || genus < 0) return {};
  std::vector<int> ext_color;
  for (std::size_t c = 0; c < s.size(); ++c) ext_color.insert(ext_color.end(), s[c], c);

  const int max_internal = std::max(0, 2 * genus + nE - 2);
  for (int nI = 0; nI <= max_internal; ++nI) {
    const int n = nE + nI;
    const int n_edges = genus + n - 1;
    if (n_edges < 0) continue;
    if (2 * n_edges - nE < 3 * nI) continue;  // internal valence demand

    // candidate edges (a,b), a <= b, in lex order; tadpoles on internals only
    std::vector<std::pair<int, int>> cand;
    for (int a = 0; a < n; ++a)
      for (int b = a; b < n; ++b)
        if (a != b || a >= nE) cand.emplace_back(a, b);

    std::vector<int> valence(n, 0);
    std::vector<std::pair<int, int>> chosen;
    auto rec = [&](auto&& self, std::size_t idx) -> void {
      const int used = static_cast<int>(chosen.size());
      if (used == n_edges) {
        for (int v = 0; v < nE; ++v)
          if (valence[v] != 1) return;
        for (int v = nE; v < n; ++v)
          if (valence[v] < 3) return;
        HairyGraph g{ext_color, nI, chosen};
        if (!hairy_connected(g)) return;
        auto [canon, sign] = canonicalize(g, p);
        if (canon.zero)
          zeros.insert(canon);
        else
          found.insert(canon);
        return;
      }
      if (idx == cand.size()) return;
      // endpoints still required vs. endpoints remaining edges can supply
      long need = 0;
      for (int v = 0; v < nE; ++v) need += std::max(0, 1 - valence[v]);
      for (int v = nE; v < n; ++v) need += std::max(0, 3 - valence[v]);
      if (need > 2L * (n_edges - used)) return;
      const auto [a, b] = cand[idx];
      self(self, idx + 1);  // zero copies of this edge
      int copies = 0;
      while (used + copies < n_edges) {
        if (a < nE && valence[a] >= 1) break;  // externals have valence exactly 1
        if (b < nE && valence[b] >= 1) break;
        ++valence[a];
        ++valence[b];
        chosen.push_back(cand[idx]);
        ++copies;
        self(self, idx + 1);
      }
      for (int i = 0; i < copies; ++i) {
        chosen.pop_back();
        --valence[a];
        --valence[b];
      }
    };
    rec(rec, 0);
  }
  if (zeros_discarded) *zeros_discarded = static_cast<long>(zeros.size());
  return {found.begin(), found.end()};
}

// Linear combination over canonical generators.
using HairyCombination = std::map<CanonicalHairy, Rat>;

// Sum of expansions of internal vertices: each valence-l vertex contributes
// every unordered splitting of its half-edges into two parts of size >= 2;
// the new internal vertex and the new (old -> new) edge are prepended to the
// orientation before re-canonicalizing.
inline HairyCombination expansion_differential(const CanonicalHairy& gen, const HairyParams& p) {
  if (gen.zero) throw std::invalid_argument("expansion_differential: zero generator");
  const HairyGraph& g = gen.graph;
  const int nE = g.ext_count();
  const int n = g.vertex_count();
  HairyCombination out;

  for (int x = nE; x < n; ++x) {
    // half-edges at x: (edge index, endpoint slot 0=tail/1=head)
    std::vector<std::pair<int, int>> half;
    for (int e = 0; e < g.edge_count(); ++e) {
      if (g.edges[e].first == x) half.emplace_back(e, 0);
      if (g.edges[e].second == x) half.emplace_back(e, 1);
    }
    const int l = static_cast<int>(half.size());
    if (l < 4) continue;
    // subsets containing half[0] with 2 <= |S| <= l-2 stay at x; the rest
    // move to the new vertex
    for (unsigned mask = 1; mask < (1u << (l - 1)); ++mask) {
      const unsigned full = (mask << 1) | 1u;
      const int size = std::popcount(full);
      if (size < 2 || size > l - 2) continue;
      HairyGraph split;
      split.ext_color = g.ext_color;
      split.internal_count = g.internal_count + 1;
      const int y = n;  // new internal vertex
      split.edges.reserve(g.edge_count() + 1);
      split.edges.emplace_back(x, y);  // new edge, old -> new, first in order
      for (const auto& [a, b] : g.edges) split.edges.emplace_back(a, b);
      for (int h = 0; h < l; ++h) {
        if (full & (1u << h)) continue;  // stays at x
        auto& e = split.edges[half[h].first + 1];
        (half[h].second == 0 ? e.first : e.second) = y;
      }
      // Orientation of the split term is [y, e_new, old elements...]; the
      // presentation order is [ext, old internals, y, e_new, old edges].
      // y and e_new have opposite degree parities, so moving the pair past
      // the old vertices costs one sign per odd old vertex.
      long odd_passed = 0;
      for (int c : g.ext_color) odd_passed += is_odd(p.m[c]) ? 1 : 0;
      if (is_odd(p.d)) odd_passed += g.internal_count;
      int sign = pow_sign(odd_passed);
      auto [canon, csign] = canonicalize(split, p);
      if (canon.zero) continue;
      Rat& coeff = out[canon];
      coeff += Rat(sign * csign);
      if (coeff == 0) out.erase(canon);
    }
  }
  return out;
}

// One hairy block: bases grouped by internal vertex count (the homological
// degree drops by one per extra internal vertex) and the expansion matrices.
struct HairyBlock {
  HairyParams params;
  std::vector<int> s;
  int t = 0;
  long top_degree = 0;                              // degree at zero internal vertices
  std::vector<std::vector<CanonicalHairy>> bases;   // index = internal vertex count
  std::vector<SparseMatrix> diffs;                  // diffs[i]: bases[i] -> bases[i+1]
};

inline HairyBlock build_hairy_block(const HairyParams& p, const std::vector<int>& s, int t,
                                    long* zeros_discarded = nullptr) {
  HairyBlock block;
  block.params = p;
  block.s = s;
  block.t = t;
  const int nE = std::accumulate(s.begin(), s.end(), 0);
  const int genus = t - nE + 1;
  long sum_ms = 0;
  for (std::size_t c = 0; c < s.size(); ++c) sum_ms += static_cast<long>(p.m[c]) * s[c];
  block.top_degree = static_cast<long>(p.d - 1) * (genus + nE - 1) - sum_ms;

  const int max_internal = std::max(0, 2 * genus + nE - 2);
  block.bases.assign(max_internal + 1, {});
  for (const auto& gen : enumerate_generators(p, s, t, zeros_discarded))
    block.bases[gen.graph.internal_count].push_back(gen);
  for (auto& basis : block.bases) std::sort(basis.begin(), basis.end());

  for (int nI = 0; nI < max_internal; ++nI) {
    SparseMatrix m;
    m.rows = static_cast<int>(block.bases[nI + 1].size());
    m.cols = static_cast<int>(block.bases[nI].size());
    std::map<CanonicalHairy, int> index;
    for (int r = 0; r < m.rows; ++r) index[block.bases[nI + 1][r]] = r;
    for (int c = 0; c < m.cols; ++c) {
      for (const auto& [canon, coeff] : expansion_differential(block.bases[nI][c], p)) {
        long deg_from = hairy_degree(block.bases[nI][c].graph, p);
        long deg_to = hairy_degree(canon.graph, p);
        if (deg_to != deg_from - 1)
          throw internal_error("expansion_differential: degree did not drop by 1");
        auto g_to = hairy_gradings(canon.graph, static_cast<int>(p.m.size()));
        if (g_to.s != s || g_to.complexity != t)
          throw internal_error("expansion_differential: gradings not preserved");
        auto it = index.find(canon);
        if (it == index.end())
          throw internal_error("expansion_differential: target outside enumerated basis");
        m.set(it->second, c, coeff);
      }
    }
    block.diffs.push_back(std::move(m));
  }
  return block;
}

}  // namespace hairycalc
