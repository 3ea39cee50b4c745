#pragma once

// Block orchestration: builds hairy or forest-side blocks per
// (m-bar, d, s-bar, t), computes homology and Euler characteristics, runs the
// duality cross-check, derives the full (disconnected) theory by a free
// graded-commutative Hilbert-series extension, and applies vertex-count
// truncations on the forest side.

#include <map>
#include <mutex>
#include <numeric>
#include <thread>
#include <vector>

#include "hairycalc/hairy.hpp"
#include "hairycalc/koszul.hpp"
#include "hairycalc/lie.hpp"
#include "hairycalc/linalg.hpp"

namespace hairycalc {

enum class ComplexKind { HairyPi, KoszulPi, KoszulFull };

inline const char* kind_name(ComplexKind k) {
  switch (k) {
    case ComplexKind::HairyPi: return "hairy";
    case ComplexKind::KoszulPi: return "koszul-pi";
    case ComplexKind::KoszulFull: return "koszul-full";
  }
  return "?";
}

struct BlockKey {
  std::vector<int> m;
  int d = 0;
  std::vector<int> s;
  int t = 0;
  ComplexKind kind = ComplexKind::HairyPi;

  auto operator<=>(const BlockKey&) const = default;
};

struct BlockComputation {
  BlockKey key;
  bool below_theorem_range = false;     // d - max m_i <= 2
  long zeros_discarded = 0;             // hairy only: zero canonical classes dropped
  std::vector<HomologySlice> slices;    // degree fields carry the actual degrees
  Int euler_chain = 0;                  // sum (-1)^deg chain_dim
  Int euler_homology = 0;               // sum (-1)^deg homology_dim
};

inline void validate_key(const BlockKey& key) {
  if (key.m.empty() || key.m.size() != key.s.size())
    throw std::invalid_argument("block key: need matching m-bar and s-bar");
  for (int mi : key.m)
    if (mi < 1) throw std::invalid_argument("block key: m_i must be >= 1");
  for (int si : key.s)
    if (si < 0) throw std::invalid_argument("block key: s_i must be >= 0");
  if (key.t < 0) throw std::invalid_argument("block key: t must be >= 0");
}

// The assembled chain data of one block: dimensions, actual degrees, and the
// differential matrices diffs[i] : C_{i+1} -> C_i, with index growing along
// with the degree.
struct ChainData {
  std::vector<int> chain_dims;
  std::vector<long> degrees;
  std::vector<SparseMatrix> diffs;
  long zeros_discarded = 0;
};

namespace detail {

inline void trim_chain(ChainData& c) {
  while (!c.chain_dims.empty() && c.chain_dims.back() == 0) {
    c.chain_dims.pop_back();
    c.degrees.pop_back();
    if (!c.diffs.empty()) c.diffs.pop_back();
  }
  while (!c.chain_dims.empty() && c.chain_dims.front() == 0) {
    c.chain_dims.erase(c.chain_dims.begin());
    c.degrees.erase(c.degrees.begin());
    if (!c.diffs.empty()) c.diffs.erase(c.diffs.begin());
  }
}

}  // namespace detail

inline ChainData build_chain(const BlockKey& key) {
  validate_key(key);
  ChainData c;
  if (key.kind == ComplexKind::HairyPi) {
    HairyParams p{key.m, key.d};
    HairyBlock block = build_hairy_block(p, key.s, key.t, &c.zeros_discarded);
    // reverse so that index grows with degree, as homology_dims expects
    const int n = static_cast<int>(block.bases.size());
    for (int j = 0; j < n; ++j) {
      int nI = n - 1 - j;
      c.chain_dims.push_back(static_cast<int>(block.bases[nI].size()));
      c.degrees.push_back(block.top_degree - nI);
      if (nI > 0) c.diffs.push_back(block.diffs[nI - 1]);
    }
  } else {
    KoszulParams p{key.m, key.d};
    KoszulBlock block = build_koszul_block(p, key.s, key.t, key.kind == ComplexKind::KoszulPi);
    for (std::size_t j = 0; j < block.levels.size(); ++j) {
      c.chain_dims.push_back(block.levels[j].dim());
      c.degrees.push_back(block.degree_of_level(static_cast<int>(j)));
    }
    c.diffs = block.diffs;
  }
  detail::trim_chain(c);
  return c;
}

inline BlockComputation compute_block(const BlockKey& key, const RankOptions& opts = {}) {
  BlockComputation out;
  out.key = key;
  out.below_theorem_range = key.d - *std::max_element(key.m.begin(), key.m.end()) <= 2;

  ChainData c = build_chain(key);
  out.zeros_discarded = c.zeros_discarded;
  if (c.chain_dims.empty()) return out;

  auto slices = homology_dims(0, c.chain_dims, c.diffs, opts);
  for (std::size_t i = 0; i < slices.size(); ++i) {
    slices[i].degree = static_cast<int>(c.degrees[i]);
    out.euler_chain += Int(pow_sign(c.degrees[i])) * slices[i].chain_dim;
    out.euler_homology += Int(pow_sign(c.degrees[i])) * slices[i].homology_dim;
  }
  out.slices = std::move(slices);
  if (out.euler_chain != out.euler_homology)
    throw internal_error("compute_block: Euler characteristics disagree");
  return out;
}

// Homology dims keyed by degree, zeros omitted.
inline std::map<long, int> homology_by_degree(const BlockComputation& c) {
  std::map<long, int> out;
  for (const auto& s : c.slices)
    if (s.homology_dim != 0) out[s.degree] = s.homology_dim;
  return out;
}

struct CrossCheck {
  bool ok = true;
  // degree -> (hairy dim, forest-side dim)
  std::map<long, std::pair<int, int>> dims;
};

// Degreewise comparison of the hairy block's homology with the connected
// forest-side block's; both are reported in the same degree (the line graph
// and its dual forest generator anchor the alignment at d - 2 m_1 - 1).
inline CrossCheck cross_check(const std::vector<int>& m, int d, const std::vector<int>& s, int t,
                              const RankOptions& opts = {}) {
  auto hairy = compute_block({m, d, s, t, ComplexKind::HairyPi}, opts);
  auto koszul = compute_block({m, d, s, t, ComplexKind::KoszulPi}, opts);
  CrossCheck out;
  for (const auto& [deg, dim] : homology_by_degree(hairy)) out.dims[deg].first = dim;
  for (const auto& [deg, dim] : homology_by_degree(koszul)) out.dims[deg].second = dim;
  for (const auto& [deg, pair] : out.dims)
    if (pair.first != pair.second) out.ok = false;
  return out;
}

// Dimensions of the free graded-commutative algebra on a table of homology
// classes (polynomial on even degrees, exterior on odd), within a degree
// window; realizes the disconnected theory from the connected one.
inline std::map<long, Int> cofree_extension(const std::map<long, Int>& pi_dims,
                                            long max_abs_degree) {
  bool has_pos = false, has_neg = false;
  for (const auto& [deg, dim] : pi_dims) {
    if (dim == 0) continue;
    if (deg == 0 && parity(deg) == 0)
      throw std::invalid_argument("cofree_extension: even degree-0 class gives infinite dims");
    (deg > 0 ? has_pos : has_neg) = true;
  }
  if (has_pos && has_neg)
    throw std::invalid_argument("cofree_extension: mixed-sign degrees are unbounded per degree");
  const int dir = has_neg ? -1 : 1;

  std::map<long, Int> series{{0, 1}};
  auto mul = [&](const std::map<long, Int>& a, const std::map<long, Int>& b) {
    std::map<long, Int> c;
    for (const auto& [da, ca] : a)
      for (const auto& [db, cb] : b) {
        long deg = da + db;
        if (deg * dir > max_abs_degree) continue;
        c[deg] += ca * cb;
      }
    return c;
  };
  for (const auto& [deg, dim] : pi_dims) {
    if (dim == 0) continue;
    std::map<long, Int> factor;
    if (is_odd(deg)) {
      // exterior: (1 + q^deg)^dim
      factor = {{0, 1}};
      std::map<long, Int> base{{0, 1}, {deg, 1}};
      for (Int i = 0; i < dim; ++i) factor = mul(factor, base);
    } else {
      // polynomial: 1/(1 - q^deg)^dim, expanded within the window
      for (long mult = 0; mult * deg * dir <= max_abs_degree; ++mult) {
        Int coeff = 1;
        for (Int i = 1; i < dim; ++i) coeff = coeff * (mult + i) / i;
        factor[mult * deg] = coeff;
      }
    }
    series = mul(series, factor);
  }
  return series;
}

// Forest-side homology with only the levels of total vertex count <= n kept
// (the contraction differential lowers the count, so this is a subcomplex).
inline BlockComputation truncated_block(const BlockKey& key, int n, const RankOptions& opts = {}) {
  if (key.kind == ComplexKind::HairyPi)
    throw std::invalid_argument("truncated_block: truncation applies to the forest side");
  if (n < 0) throw std::invalid_argument("truncated_block: bound must be >= 0");
  validate_key(key);
  BlockComputation out;
  out.key = key;
  out.below_theorem_range = key.d - *std::max_element(key.m.begin(), key.m.end()) <= 2;

  KoszulParams p{key.m, key.d};
  KoszulBlock block = build_koszul_block(p, key.s, key.t, key.kind == ComplexKind::KoszulPi);

  std::vector<int> chain_dims;
  std::vector<SparseMatrix> diffs;
  std::vector<long> degrees;
  for (std::size_t j = 0; j < block.levels.size(); ++j) {
    if (block.k_min + static_cast<int>(j) > n) break;
    chain_dims.push_back(block.levels[j].dim());
    degrees.push_back(block.degree_of_level(static_cast<int>(j)));
    if (j > 0) diffs.push_back(block.diffs[j - 1]);
  }
  while (!chain_dims.empty() && chain_dims.back() == 0) {
    chain_dims.pop_back();
    degrees.pop_back();
    if (!diffs.empty()) diffs.pop_back();
  }
  if (chain_dims.empty()) return out;

  auto slices = homology_dims(0, chain_dims, diffs, opts);
  for (std::size_t i = 0; i < slices.size(); ++i) {
    slices[i].degree = static_cast<int>(degrees[i]);
    out.euler_chain += Int(pow_sign(degrees[i])) * slices[i].chain_dim;
    out.euler_homology += Int(pow_sign(degrees[i])) * slices[i].homology_dim;
  }
  out.slices = std::move(slices);
  return out;
}

// Per-color truncation: keep only the invariant subspaces whose per-color
// vertex counts satisfy k_i <= n_i.
inline BlockComputation truncated_block(const BlockKey& key, const std::vector<int>& nbar,
                                        const RankOptions& opts = {}) {
  if (key.kind == ComplexKind::HairyPi)
    throw std::invalid_argument("truncated_block: truncation applies to the forest side");
  validate_key(key);
  if (nbar.size() != key.m.size())
    throw std::invalid_argument("truncated_block: bound/color count mismatch");
  BlockComputation out;
  out.key = key;
  out.below_theorem_range = key.d - *std::max_element(key.m.begin(), key.m.end()) <= 2;

  KoszulParams p{key.m, key.d};
  KoszulBlock block = build_koszul_block(p, key.s, key.t, key.kind == ComplexKind::KoszulPi);
  const std::size_t levels = block.levels.size();

  // global index maps restricted to the kept kbars, per level
  std::vector<std::vector<int>> keep(levels);  // new index or -1, by old global index
  std::vector<int> kept_dim(levels, 0);
  for (std::size_t j = 0; j < levels; ++j) {
    const auto& level = block.levels[j];
    for (std::size_t q = 0; q < level.kbars.size(); ++q) {
      bool ok = true;
      for (std::size_t i = 0; i < nbar.size(); ++i)
        if (level.kbars[q][i] > nbar[i]) ok = false;
      for (std::size_t v = 0; v < level.invariants[q].size(); ++v)
        keep[j].push_back(ok ? kept_dim[j]++ : -1);
    }
  }

  std::vector<int> chain_dims;
  std::vector<SparseMatrix> diffs;
  std::vector<long> degrees;
  for (std::size_t j = 0; j < levels; ++j) {
    chain_dims.push_back(kept_dim[j]);
    degrees.push_back(block.degree_of_level(static_cast<int>(j)));
  }
  for (std::size_t j = 0; j + 1 < levels; ++j) {
    SparseMatrix m;
    m.rows = kept_dim[j];
    m.cols = kept_dim[j + 1];
    for (const auto& [rc, v] : block.diffs[j].entries) {
      int nr = keep[j][rc.first];
      int nc = keep[j + 1][rc.second];
      if (nc < 0) continue;
      if (nr < 0)
        throw internal_error("truncated_block: truncation is not a subcomplex");
      m.set(nr, nc, v);
    }
    diffs.push_back(std::move(m));
  }
  while (!chain_dims.empty() && chain_dims.back() == 0) {
    chain_dims.pop_back();
    degrees.pop_back();
    if (!diffs.empty()) diffs.pop_back();
  }
  while (!chain_dims.empty() && chain_dims.front() == 0) {
    chain_dims.erase(chain_dims.begin());
    degrees.erase(degrees.begin());
    if (!diffs.empty()) diffs.erase(diffs.begin());
  }
  if (chain_dims.empty()) return out;

  auto slices = homology_dims(0, chain_dims, diffs, opts);
  for (std::size_t i = 0; i < slices.size(); ++i) {
    slices[i].degree = static_cast<int>(degrees[i]);
    out.euler_chain += Int(pow_sign(degrees[i])) * slices[i].chain_dim;
    out.euler_homology += Int(pow_sign(degrees[i])) * slices[i].homology_dim;
  }
  out.slices = std::move(slices);
  return out;
}

// Runs independent block jobs on a fixed number of workers; the result table
// is deterministic because it is keyed, not ordered by completion.
inline std::map<BlockKey, BlockComputation> run_blocks(const std::vector<BlockKey>& keys,
                                                       int workers,
                                                       const RankOptions& opts = {}) {
  if (workers < 1) throw std::invalid_argument("run_blocks: need at least one worker");
  std::map<BlockKey, BlockComputation> table;
  std::mutex mu;
  std::size_t next = 0;
  std::exception_ptr error;
  auto work = [&]() {
    while (true) {
      std::size_t i;
      {
        std::lock_guard lock(mu);
        if (error || next >= keys.size()) return;
        i = next++;
      }
      try {
        auto result = compute_block(keys[i], opts);
        std::lock_guard lock(mu);
        table.emplace(keys[i], std::move(result));
      } catch (...) {
        std::lock_guard lock(mu);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
  return table;
}

}  // namespace hairycalc
