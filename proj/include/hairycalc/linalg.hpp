#pragma once

// Exact sparse linear algebra over Q: differential matrices, ranks, and
// homology dimensions.  Elimination keeps exact rationals throughout;
// verification modulo random word-sized primes is opt-in.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "hairycalc/rational.hpp"

namespace hairycalc {

struct SparseMatrix {
  int rows = 0;
  int cols = 0;
  // (row, col) -> value; no explicit zeros.
  std::map<std::pair<int, int>, Rat> entries;

  void set(int r, int c, const Rat& v) {
    if (r < 0 || r >= rows || c < 0 || c >= cols)
      throw std::invalid_argument("SparseMatrix::set: index out of range");
    if (v == 0)
      entries.erase({r, c});
    else
      entries[{r, c}] = v;
  }

  void add(int r, int c, const Rat& v) {
    if (v == 0) return;
    auto it = entries.find({r, c});
    if (it == entries.end()) {
      set(r, c, v);
    } else {
      it->second += v;
      if (it->second == 0) entries.erase(it);
    }
  }

  Rat get(int r, int c) const {
    auto it = entries.find({r, c});
    return it == entries.end() ? Rat(0) : it->second;
  }

  SparseMatrix transpose() const {
    SparseMatrix t;
    t.rows = cols;
    t.cols = rows;
    for (const auto& [rc, v] : entries) t.entries[{rc.second, rc.first}] = v;
    return t;
  }

  bool is_zero() const { return entries.empty(); }

  friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.cols != b.rows) throw std::invalid_argument("SparseMatrix: dimension mismatch");
    SparseMatrix c;
    c.rows = a.rows;
    c.cols = b.cols;
    // row -> (col -> value) view of b
    std::vector<std::vector<std::pair<int, Rat>>> brows(b.rows);
    for (const auto& [rc, v] : b.entries) brows[rc.first].emplace_back(rc.second, v);
    for (const auto& [rc, v] : a.entries)
      for (const auto& [bc, bv] : brows[rc.second]) c.add(rc.first, bc, v * bv);
    return c;
  }

  bool operator==(const SparseMatrix& o) const {
    return rows == o.rows && cols == o.cols && entries == o.entries;
  }
};

namespace detail {

// Rank over Z/p by plain elimination; rows are given with integer entries.
inline int rank_mod_p(const std::vector<std::vector<std::pair<int, Int>>>& int_rows, int cols,
                      std::uint64_t p) {
  std::vector<std::vector<std::uint64_t>> dense;
  dense.reserve(int_rows.size());
  for (const auto& row : int_rows) {
    std::vector<std::uint64_t> d(cols, 0);
    bool nonzero = false;
    for (const auto& [c, v] : row) {
      Int red = v % Int(p);
      if (red < 0) red += Int(p);
      d[c] = static_cast<std::uint64_t>(red);
      nonzero = nonzero || d[c] != 0;
    }
    if (nonzero) dense.push_back(std::move(d));
  }
  auto mulmod = [p](std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
  };
  auto powmod = [&](std::uint64_t a, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e) {
      if (e & 1) r = mulmod(r, a);
      a = mulmod(a, a);
      e >>= 1;
    }
    return r;
  };
  int rank = 0;
  for (int c = 0; c < cols && rank < static_cast<int>(dense.size()); ++c) {
    int pivot = -1;
    for (int r = rank; r < static_cast<int>(dense.size()); ++r)
      if (dense[r][c] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(dense[rank], dense[pivot]);
    std::uint64_t inv = powmod(dense[rank][c], p - 2);
    for (int r = rank + 1; r < static_cast<int>(dense.size()); ++r) {
      if (dense[r][c] == 0) continue;
      std::uint64_t f = mulmod(dense[r][c], inv);
      for (int cc = c; cc < cols; ++cc) {
        std::uint64_t sub = mulmod(f, dense[rank][cc]);
        dense[r][cc] = (dense[r][cc] + p - sub) % p;
      }
    }
    ++rank;
  }
  return rank;
}

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace detail

struct RankOptions {
  bool modular_verify = false;
  std::uint64_t seed = 0x9e3779b97f4a7c15ull;
};

// Exact rank over Q.  Gaussian elimination on sparse rows with
// Markowitz-style pivot selection (minimal fill estimate, ties broken by the
// smallest entry bit-length).  When modular verification is on, the rank is
// recomputed modulo two random 31-bit primes and any disagreement is a hard
// internal error.
inline int rank(const SparseMatrix& m, const RankOptions& opts = {}) {
  // row -> sorted (col, value)
  std::vector<std::map<int, Rat>> rows_map(m.rows);
  for (const auto& [rc, v] : m.entries) rows_map[rc.first][rc.second] = v;
  std::vector<std::map<int, Rat>> rows;
  rows.reserve(m.rows);
  for (auto& r : rows_map)
    if (!r.empty()) rows.push_back(std::move(r));

  // Integer copy for optional modular verification, rows scaled by the lcm of
  // denominators (does not change the rank).
  std::vector<std::vector<std::pair<int, Int>>> int_rows;
  if (opts.modular_verify) {
    for (const auto& r : rows) {
      Int l = 1;
      for (const auto& [c, v] : r) l = lcm(l, denominator(v));
      std::vector<std::pair<int, Int>> ir;
      for (const auto& [c, v] : r) ir.emplace_back(c, numerator(v) * (l / denominator(v)));
      int_rows.push_back(std::move(ir));
    }
  }

  std::vector<int> col_count(m.cols, 0);
  for (const auto& r : rows)
    for (const auto& [c, v] : r) ++col_count[c];

  int rk = 0;
  std::vector<char> row_done(rows.size(), 0);
  while (true) {
    // Markowitz pivot: minimize (nnz(row)-1)*(nnz(col)-1).
    long best_score = std::numeric_limits<long>::max();
    std::size_t best_bits = 0;
    int br = -1, bc = -1;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (row_done[r] || rows[r].empty()) continue;
      for (const auto& [c, v] : rows[r]) {
        long score = static_cast<long>(rows[r].size() - 1) * (col_count[c] - 1);
        std::size_t bits = bit_size(v);
        if (score < best_score || (score == best_score && bits < best_bits)) {
          best_score = score;
          best_bits = bits;
          br = static_cast<int>(r);
          bc = c;
        }
      }
    }
    if (br < 0) break;
    ++rk;
    row_done[br] = 1;
    const Rat pivot = rows[br].at(bc);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (row_done[r]) continue;
      auto it = rows[r].find(bc);
      if (it == rows[r].end()) continue;
      const Rat f = it->second / pivot;
      for (const auto& [c, v] : rows[br]) {
        auto jt = rows[r].find(c);
        if (jt == rows[r].end()) {
          rows[r][c] = -f * v;
          ++col_count[c];
        } else {
          jt->second -= f * v;
          if (jt->second == 0) {
            rows[r].erase(jt);
            --col_count[c];
          }
        }
      }
    }
    for (const auto& [c, v] : rows[br]) --col_count[c];
    rows[br].clear();
  }

  if (opts.modular_verify) {
    std::mt19937_64 rng(opts.seed);
    std::uniform_int_distribution<std::uint64_t> dist(1u << 30, (1u << 31) - 1);
    for (int trial = 0; trial < 2; ++trial) {
      std::uint64_t p = dist(rng);
      while (!detail::is_prime_u64(p)) ++p;
      int mod_rank = detail::rank_mod_p(int_rows, m.cols, p);
      if (mod_rank != rk)
        throw internal_error("rank: modular verification disagrees with rational rank");
    }
  }
  return rk;
}

struct HomologySlice {
  int degree = 0;
  int chain_dim = 0;
  int rank_out = 0;  // rank of the differential leaving this degree
  int rank_in = 0;   // rank of the differential entering this degree
  int homology_dim = 0;
};

// Homology dimensions of a complex given as matrices d_n : C_n -> C_{n-1}.
// `chain_dims[i]` is dim C_{lowest_degree+i}; `diffs[i]` maps degree
// lowest_degree+i+1 to lowest_degree+i.  Composites are asserted to vanish.
inline std::vector<HomologySlice> homology_dims(int lowest_degree,
                                                const std::vector<int>& chain_dims,
                                                const std::vector<SparseMatrix>& diffs,
                                                const RankOptions& opts = {}) {
  const int n = static_cast<int>(chain_dims.size());
  if (static_cast<int>(diffs.size()) + 1 != n && !(n == 0 && diffs.empty()))
    throw std::invalid_argument("homology_dims: need one differential between consecutive degrees");
  for (int i = 0; i + 1 < n; ++i) {
    if (diffs[i].rows != chain_dims[i] || diffs[i].cols != chain_dims[i + 1])
      throw std::invalid_argument("homology_dims: matrix shape mismatch");
    if (i + 2 < n && !(diffs[i] * diffs[i + 1]).is_zero())
      throw internal_error("homology_dims: composite of consecutive differentials is nonzero");
  }
  std::vector<int> ranks(std::max(0, n - 1));
  for (int i = 0; i + 1 < n; ++i) ranks[i] = rank(diffs[i], opts);
  std::vector<HomologySlice> out;
  for (int i = 0; i < n; ++i) {
    HomologySlice s;
    s.degree = lowest_degree + i;
    s.chain_dim = chain_dims[i];
    s.rank_out = i > 0 ? ranks[i - 1] : 0;  // d maps this degree down to i-1
    s.rank_in = i + 1 < n ? ranks[i] : 0;
    s.homology_dim = s.chain_dim - s.rank_out - s.rank_in;
    if (s.homology_dim < 0)
      throw internal_error("homology_dims: negative homology dimension");
    out.push_back(s);
  }
  return out;
}

}  // namespace hairycalc
