#pragma once

// Independent combinatorial oracles: configuration-space Poincare
// polynomials, free graded Lie algebra dimensions (by Hilbert-series
// inversion and by an explicit bracket basis inside the tensor algebra),
// and the Whitehead-bracket kernel computing pi_0 of link spaces.

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "hairycalc/linalg.hpp"
#include "hairycalc/rational.hpp"

namespace hairycalc {

// Poincare polynomial of C(k, R^n): prod_{j=1}^{k-1} (1 + j q^{n-1}).
// Returned as coefficients indexed by edge count e (the q^{(n-1)e} term),
// which makes it independent of n.
inline std::vector<Int> config_poincare_coeffs(int k) {
  if (k < 0) throw std::invalid_argument("config_poincare: k < 0");
  std::vector<Int> c{1};
  for (int j = 1; j < k; ++j) {
    std::vector<Int> next(c.size() + 1, 0);
    for (std::size_t e = 0; e < c.size(); ++e) {
      next[e] += c[e];
      next[e + 1] += c[e] * j;
    }
    c = std::move(next);
  }
  return c;
}

// dim Lie(n) = (n-1)! for the multilinear part of the free Lie algebra.
inline Int lie_operad_dim(int n) {
  if (n <= 0) throw std::invalid_argument("lie_operad_dim: n must be positive");
  Int f = 1;
  for (int i = 2; i < n; ++i) f *= i;
  return f;
}

// ---------------------------------------------------------------------------
// Multiweight bookkeeping.  A multiweight is a vector of per-color weights;
// every element of that multiweight in the free graded Lie algebra sits in
// the single degree sum_i w_i * gen_degree_i.

using Weight = std::vector<int>;

inline int total(const Weight& w) { return std::accumulate(w.begin(), w.end(), 0); }

inline long weight_degree(const Weight& w, const std::vector<long>& gen_degrees) {
  long deg = 0;
  for (std::size_t i = 0; i < w.size(); ++i) deg += static_cast<long>(w[i]) * gen_degrees[i];
  return deg;
}

inline std::vector<Weight> weights_of_total(int r, int w) {
  std::vector<Weight> out;
  Weight cur(r, 0);
  auto rec = [&](auto&& self, int pos, int rem) -> void {
    if (pos == r - 1) {
      cur[pos] = rem;
      out.push_back(cur);
      return;
    }
    for (int v = 0; v <= rem; ++v) {
      cur[pos] = v;
      self(self, pos + 1, rem - v);
    }
  };
  if (r == 0) {
    if (w == 0) out.push_back({});
    return out;
  }
  rec(rec, 0, w);
  return out;
}

inline Int multinomial(const Weight& w) {
  Int num = 1;
  int n = 0;
  for (int wi : w)
    for (int j = 1; j <= wi; ++j) num = num * (++n) / j;
  return num;
}

// ---------------------------------------------------------------------------
// Free graded Lie dimensions by inverting the PBW identity: the multigraded
// Hilbert series of the tensor algebra equals the Euler product over the Lie
// basis, odd-degree pieces contributing (1 + x^w) and even pieces
// 1/(1 - x^w).  Solved recursively by total weight with exact arithmetic.

inline std::map<Weight, Int> free_graded_lie_dims(const std::vector<long>& gen_degrees,
                                                  int max_total_weight) {
  const int r = static_cast<int>(gen_degrees.size());
  // truncated multivariate series: multiweight -> coefficient
  using Series = std::map<Weight, Rat>;
  auto series_mul = [&](const Series& a, const Series& b) {
    Series c;
    for (const auto& [wa, ca] : a)
      for (const auto& [wb, cb] : b) {
        Weight w(r);
        int tot = 0;
        for (int i = 0; i < r; ++i) tot += (w[i] = wa[i] + wb[i]);
        if (tot > max_total_weight) continue;
        c[w] += ca * cb;
      }
    for (auto it = c.begin(); it != c.end();)
      it = it->second == 0 ? c.erase(it) : std::next(it);
    return c;
  };

  std::map<Weight, Int> dims;
  Series product{{Weight(r, 0), 1}};
  for (int w = 1; w <= max_total_weight; ++w) {
    for (const Weight& mw : weights_of_total(r, w)) {
      // tensor-algebra coefficient = number of words = multinomial
      Rat target = Rat(multinomial(mw));
      auto it = product.find(mw);
      Rat have = it == product.end() ? Rat(0) : it->second;
      Rat a = target - have;
      if (denominator(a) != 1 || a < 0)
        throw internal_error("free_graded_lie_dims: series inversion failed");
      Int dim = numerator(a);
      dims[mw] = dim;
      if (dim == 0) continue;
      // multiply the product by the factor of this Lie piece
      Series factor{{Weight(r, 0), 1}};
      bool odd = is_odd(weight_degree(mw, gen_degrees));
      if (odd) {
        // (1 + x^mw)^dim
        Series base{{Weight(r, 0), 1}, {mw, 1}};
        for (Int i = 0; i < dim; ++i) factor = series_mul(factor, base);
      } else {
        // 1/(1-x^mw)^dim: expand geometric series per power
        Series base;
        Weight acc(r, 0);
        for (int mult = 0;; ++mult) {
          if (total(acc) > max_total_weight) break;
          // binomial(mult + dim - 1, dim - 1) copies at x^{mult*mw}
          Int coeff = 1;
          for (Int i = 1; i < dim; ++i) coeff = coeff * (mult + i) / i;
          base[acc] = Rat(coeff);
          for (int i = 0; i < r; ++i) acc[i] += mw[i];
        }
        factor = base;
      }
      product = series_mul(product, factor);
    }
  }
  return dims;
}

// ---------------------------------------------------------------------------
// Explicit model of the free graded Lie algebra inside the tensor algebra:
// elements are Q-combinations of words in the generators, the bracket is
// [u,v] = uv - (-1)^{|u||v|} vu.

using Word = std::vector<int>;
using TensorElement = std::map<Word, Rat>;

inline long word_degree(const Word& w, const std::vector<long>& gen_degrees) {
  long deg = 0;
  for (int letter : w) deg += gen_degrees[letter];
  return deg;
}

inline void tensor_add(TensorElement& a, const TensorElement& b, const Rat& scale = 1) {
  for (const auto& [w, c] : b) {
    auto it = a.find(w);
    if (it == a.end())
      a.emplace(w, c * scale);
    else {
      it->second += c * scale;
      if (it->second == 0) a.erase(it);
    }
  }
}

inline TensorElement graded_bracket(const TensorElement& u, const TensorElement& v,
                                    const std::vector<long>& gen_degrees) {
  TensorElement out;
  for (const auto& [wu, cu] : u)
    for (const auto& [wv, cv] : v) {
      Word uv = wu;
      uv.insert(uv.end(), wv.begin(), wv.end());
      Word vu = wv;
      vu.insert(vu.end(), wu.begin(), wu.end());
      int s = pow_sign(word_degree(wu, gen_degrees) * word_degree(wv, gen_degrees));
      tensor_add(out, TensorElement{{uv, cu * cv}});
      tensor_add(out, TensorElement{{vu, -Rat(s) * cu * cv}});
    }
  return out;
}

// Basis of the multiweight-w piece of the free graded Lie algebra, realized
// as tensor elements.  Left-normed brackets [x_i, f] span each piece; an
// independent subset is selected by exact rank computation.
class FreeLieBasis {
public:
  explicit FreeLieBasis(std::vector<long> gen_degrees) : gen_degrees_(std::move(gen_degrees)) {}

  const std::vector<TensorElement>& basis(const Weight& w) {
    auto it = cache_.find(w);
    if (it != cache_.end()) return it->second;
    std::vector<TensorElement> result;
    const int r = static_cast<int>(gen_degrees_.size());
    if (total(w) == 1) {
      for (int i = 0; i < r; ++i)
        if (w[i] == 1) result.push_back(TensorElement{{Word{i}, 1}});
    } else if (total(w) > 1) {
      std::vector<TensorElement> candidates;
      for (int i = 0; i < r; ++i) {
        if (w[i] == 0) continue;
        Weight sub = w;
        --sub[i];
        TensorElement xi{{Word{i}, 1}};
        for (const auto& f : basis(sub))
          candidates.push_back(graded_bracket(xi, f, gen_degrees_));
      }
      result = select_independent(candidates);
    }
    return cache_.emplace(w, std::move(result)).first->second;
  }

  // Coordinates of elements in the word basis of a fixed multiweight, as a
  // matrix whose columns are the elements.
  static SparseMatrix coordinate_matrix(const std::vector<TensorElement>& elems) {
    std::map<Word, int> word_index;
    for (const auto& e : elems)
      for (const auto& [w, c] : e) word_index.emplace(w, 0);
    int n = 0;
    for (auto& [w, idx] : word_index) idx = n++;
    SparseMatrix m;
    m.rows = n;
    m.cols = static_cast<int>(elems.size());
    for (int c = 0; c < m.cols; ++c)
      for (const auto& [w, v] : elems[c]) m.set(word_index[w], c, v);
    return m;
  }

  const std::vector<long>& gen_degrees() const { return gen_degrees_; }

private:
  static std::vector<TensorElement> select_independent(const std::vector<TensorElement>& cand) {
    std::vector<TensorElement> chosen;
    for (const auto& e : cand) {
      if (e.empty()) continue;
      auto trial = chosen;
      trial.push_back(e);
      SparseMatrix m = coordinate_matrix(trial);
      if (rank(m) == static_cast<int>(trial.size())) chosen.push_back(e);
    }
    return chosen;
  }

  std::vector<long> gen_degrees_;
  std::map<Weight, std::vector<TensorElement>> cache_;
};

// ---------------------------------------------------------------------------
// Tree-part homology oracle.  The multiweight-s piece of the genus-0 hairy
// homology equals ker(V (x) L(V) -> L(V), v (x) f -> [v, f]) in that
// multiweight, with V spanned by generators of degree d - m_i - 2, shifted
// down by d - 3 at the end.  Returns {degree -> dim}; concentrated in one
// degree per multiweight.

struct TreeHomology {
  long degree = 0;  // homological degree after the shift
  Int dim = 0;
};

inline TreeHomology tree_homology_oracle(const std::vector<int>& m, int d, const Weight& s) {
  const int r = static_cast<int>(m.size());
  if (static_cast<int>(s.size()) != r)
    throw std::invalid_argument("tree_homology_oracle: weight/color count mismatch");
  std::vector<long> gen_degrees(r);
  for (int i = 0; i < r; ++i) gen_degrees[i] = d - m[i] - 2;
  FreeLieBasis lie(gen_degrees);

  // domain: pairs (i, f) with f in the Lie basis of multiweight s - e_i
  std::vector<TensorElement> images;
  int domain_dim = 0;
  for (int i = 0; i < r; ++i) {
    if (s[i] == 0) continue;
    Weight sub = s;
    --sub[i];
    TensorElement xi{{Word{i}, 1}};
    for (const auto& f : lie.basis(sub)) {
      images.push_back(graded_bracket(xi, f, gen_degrees));
      ++domain_dim;
    }
  }
  TreeHomology out;
  out.degree = weight_degree(s, gen_degrees) - (d - 3);
  out.dim = Int(domain_dim) - rank(FreeLieBasis::coordinate_matrix(images));
  return out;
}

// ---------------------------------------------------------------------------
// pi_0 via the Whitehead kernel (generators iota_i of degree d - m_i - 2):
// the kernel of q_0 : (alpha_1..alpha_r) -> sum [iota_i, alpha_i] restricted
// to total degree d - 3, with alpha_i running over the degree-(m_i - 1) part
// of the free graded Lie algebra.

inline Int whitehead_kernel_dim(const std::vector<int>& m, int d) {
  const int r = static_cast<int>(m.size());
  int max_m = *std::max_element(m.begin(), m.end());
  if (d - max_m <= 2)
    throw std::invalid_argument("whitehead_kernel_dim: codimension must exceed 2");
  std::vector<long> gen_degrees(r);
  for (int i = 0; i < r; ++i) gen_degrees[i] = d - m[i] - 2;  // all >= 1
  FreeLieBasis lie(gen_degrees);

  std::vector<TensorElement> images;
  int domain_dim = 0;
  for (int i = 0; i < r; ++i) {
    const long target = m[i] - 1;  // degree of alpha_i
    // generator degrees are >= 1, so the weight is bounded by the degree
    for (int w = 1; w <= target; ++w) {
      for (const Weight& mw : weights_of_total(r, w)) {
        if (weight_degree(mw, gen_degrees) != target) continue;
        TensorElement xi{{Word{i}, 1}};
        for (const auto& f : lie.basis(mw)) {
          images.push_back(graded_bracket(xi, f, gen_degrees));
          ++domain_dim;
        }
      }
    }
  }
  return Int(domain_dim) - rank(FreeLieBasis::coordinate_matrix(images));
}

}  // namespace hairycalc
