#pragma once

// Graded sign bookkeeping shared by the hairy and Koszul complexes:
// degrees of orientation-set elements, Koszul signs of permutations,
// and edge-flip signs.

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "hairycalc/rational.hpp"

namespace hairycalc {

enum class ElemKind : std::uint8_t {
  NonColoredEdge,    // degree d-1
  ColoredEdge,       // degree m_i-1 (oriented description) or -1 (component description)
  InternalVertex,    // degree -d
  ExternalVertex,    // degree -m_i
  ColoredComponent,  // degree -m_i
};

// Which of the two orientation-set descriptions of the Koszul complex is in
// effect; it only changes the degree of colored edges.
enum class ColoredEdgeConvention : std::uint8_t { Oriented, Component };

struct OrientationElement {
  ElemKind kind;
  int color = 0;  // 0-based color index, meaningful for colored kinds
  long id = 0;    // opaque identity, never positional
};

inline long element_degree(ElemKind kind, int color, int d, const std::vector<int>& m,
                           ColoredEdgeConvention conv = ColoredEdgeConvention::Component) {
  switch (kind) {
    case ElemKind::NonColoredEdge:
      return d - 1;
    case ElemKind::ColoredEdge:
      if (color < 0 || color >= static_cast<int>(m.size()))
        throw std::invalid_argument("element_degree: color index out of range");
      return conv == ColoredEdgeConvention::Oriented ? m[color] - 1 : -1;
    case ElemKind::InternalVertex:
      return -d;
    case ElemKind::ExternalVertex:
    case ElemKind::ColoredComponent:
      if (color < 0 || color >= static_cast<int>(m.size()))
        throw std::invalid_argument("element_degree: color index out of range");
      return -m[color];
  }
  throw std::invalid_argument("element_degree: bad kind");
}

// Koszul sign of a permutation of graded elements.  `perm[p]` is the index of
// the element placed at position p after the permutation; `degrees[i]` is the
// degree of element i.  The sign is (-1)^k where k counts inversions between
// pairs of odd-degree elements.
inline int koszul_sign(const std::vector<int>& perm, const std::vector<long>& degrees) {
  const std::size_t n = perm.size();
  if (n != degrees.size())
    throw std::invalid_argument("koszul_sign: permutation/degree length mismatch");
  std::vector<char> seen(n, 0);
  for (int v : perm) {
    if (v < 0 || static_cast<std::size_t>(v) >= n || seen[v])
      throw std::invalid_argument("koszul_sign: not a permutation");
    seen[v] = 1;
  }
  int sign = 1;
  for (std::size_t p = 0; p < n; ++p) {
    if (!is_odd(degrees[perm[p]])) continue;
    for (std::size_t q = p + 1; q < n; ++q)
      if (perm[p] > perm[q] && is_odd(degrees[perm[q]])) sign = -sign;
  }
  return sign;
}

// Sign of an ordinary (ungraded) permutation, same argument convention.
inline int permutation_sign(const std::vector<int>& perm) {
  int sign = 1;
  const std::size_t n = perm.size();
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = p + 1; q < n; ++q)
      if (perm[p] > perm[q]) sign = -sign;
  return sign;
}

// Sign picked up when reversing the orientation of an edge: (-1)^d for
// non-colored edges, (-1)^{m_i} for edges colored by i.
inline int edge_flip_sign(ElemKind kind, int d, const std::vector<int>& m, int color = 0) {
  switch (kind) {
    case ElemKind::NonColoredEdge:
      return pow_sign(d);
    case ElemKind::ColoredEdge:
      if (color < 0 || color >= static_cast<int>(m.size()))
        throw std::invalid_argument("edge_flip_sign: color index out of range");
      return pow_sign(m[color]);
    default:
      throw std::invalid_argument("edge_flip_sign: not an edge kind");
  }
}

}  // namespace hairycalc
