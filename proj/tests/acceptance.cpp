// Acceptance gate: one PASS/FAIL line per criterion.  argv[1] is the path to
// the hairycalc binary (used by the determinism criterion).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>
#include <vector>

#include "hairycalc/engine.hpp"

namespace hc = hairycalc;

namespace {

int failures = 0;

void report(int index, const std::string& name, bool ok, const std::string& detail = "") {
  std::cout << "criterion " << index << " (" << name << "): " << (ok ? "PASS" : "FAIL");
  if (!ok && !detail.empty()) std::cout << " [" << detail << "]";
  std::cout << std::endl;
  if (!ok) ++failures;
}

std::vector<std::vector<int>> multidegrees(int colors, int max_total) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(colors, 0);
  auto rec = [&](auto&& self, int i, int budget) -> void {
    if (i == colors) {
      out.push_back(cur);
      return;
    }
    for (int v = 0; v <= budget; ++v) {
      cur[i] = v;
      self(self, i + 1, budget - v);
    }
  };
  rec(rec, 0, max_total);
  return out;
}

std::string label(const hc::BlockKey& key) {
  std::ostringstream out;
  out << hc::kind_name(key.kind) << " m=";
  for (std::size_t i = 0; i < key.m.size(); ++i) out << (i ? "," : "") << key.m[i];
  out << " d=" << key.d << " s=";
  for (std::size_t i = 0; i < key.s.size(); ++i) out << (i ? "," : "") << key.s[i];
  out << " t=" << key.t;
  return out.str();
}

// Parallel table of block computations; failures are collected, not fatal.
struct Table {
  std::map<hc::BlockKey, hc::BlockComputation> done;
  std::map<hc::BlockKey, std::string> failed;
};

Table compute_table(const std::vector<hc::BlockKey>& keys) {
  Table table;
  std::mutex mu;
  std::size_t next = 0;
  auto work = [&]() {
    while (true) {
      std::size_t i;
      {
        std::lock_guard lock(mu);
        if (next >= keys.size()) return;
        i = next++;
      }
      try {
        auto result = hc::compute_block(keys[i]);
        std::lock_guard lock(mu);
        table.done.emplace(keys[i], std::move(result));
      } catch (const std::exception& e) {
        std::lock_guard lock(mu);
        table.failed.emplace(keys[i], e.what());
      }
    }
  };
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  return table;
}

// Homology of the genus-0 (tree) block with the given multidegree.
std::map<long, int> tree_dims(const std::vector<int>& m, int d, const std::vector<int>& s) {
  const int total = std::accumulate(s.begin(), s.end(), 0);
  auto comp = hc::compute_block({m, d, s, total - 1, hc::ComplexKind::HairyPi});
  return hc::homology_by_degree(comp);
}

hc::Int tree_h0_sum(const std::vector<int>& m, int d, int max_hairs) {
  hc::Int h0 = 0;
  for (const auto& s : multidegrees(static_cast<int>(m.size()), max_hairs)) {
    if (std::accumulate(s.begin(), s.end(), 0) < 1) continue;
    auto dims = tree_dims(m, d, s);
    if (auto it = dims.find(0); it != dims.end()) h0 += it->second;
  }
  return h0;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  const std::vector<std::vector<int>> mbars{{2}, {3}, {2, 2}, {2, 3}, {3, 3}};
  const std::vector<int> dims_d{6, 7, 8, 9};

  std::vector<hc::BlockKey> keys;
  for (const auto& m : mbars)
    for (int d : dims_d)
      for (const auto& s : multidegrees(static_cast<int>(m.size()), 4))
        for (int t = 0; t <= 2; ++t)
          for (auto kind :
               {hc::ComplexKind::HairyPi, hc::ComplexKind::KoszulPi, hc::ComplexKind::KoszulFull})
            keys.push_back({m, d, s, t, kind});
  Table table = compute_table(keys);

  // 1: every block of every complex builds with an exactly vanishing square.
  {
    std::string detail;
    if (!table.failed.empty())
      detail = label(table.failed.begin()->first) + ": " + table.failed.begin()->second;
    report(1, "square-zero differentials on the full grid", table.failed.empty(), detail);
  }

  // 2: even codimension: the tree part is one line-graph class.
  {
    bool ok = true;
    std::string detail;
    for (auto [m, d] : std::vector<std::pair<int, int>>{{2, 6}, {3, 7}}) {
      hc::Int total = 0;
      for (int s = 1; s <= 4; ++s) {
        auto dims = tree_dims({m}, d, {s});
        for (const auto& [deg, dim] : dims) total += dim;
        bool want = s == 2;
        std::map<long, int> expect;
        if (want) expect[d - 2 * m - 1] = 1;
        if (dims != expect) {
          ok = false;
          detail = "m=" + std::to_string(m) + " d=" + std::to_string(d) +
                   " s=" + std::to_string(s);
        }
      }
      if (total != 1) ok = false;
    }
    report(2, "line-graph tree homology", ok, detail);
  }

  // 3: odd codimension: the tree part is one tripod class of degree 2d-3m-3.
  {
    bool ok = true;
    std::string detail;
    for (auto [m, d] : std::vector<std::pair<int, int>>{{2, 7}, {3, 8}}) {
      hc::Int total = 0;
      for (int s = 1; s <= 4; ++s) {
        auto dims = tree_dims({m}, d, {s});
        for (const auto& [deg, dim] : dims) total += dim;
        std::map<long, int> expect;
        if (s == 3) expect[2 * d - 3 * m - 3] = 1;
        if (dims != expect) {
          ok = false;
          detail = "m=" + std::to_string(m) + " d=" + std::to_string(d) +
                   " s=" + std::to_string(s);
        }
      }
      if (total != 1) ok = false;
    }
    report(3, "tripod tree homology", ok, detail);
  }

  // 4: hairy and connected forest-side homology agree degreewise everywhere.
  {
    bool ok = true;
    std::string detail;
    for (const auto& [key, comp] : table.done) {
      if (key.kind != hc::ComplexKind::HairyPi) continue;
      hc::BlockKey dual = key;
      dual.kind = hc::ComplexKind::KoszulPi;
      auto it = table.done.find(dual);
      if (it == table.done.end() ||
          hc::homology_by_degree(comp) != hc::homology_by_degree(it->second)) {
        ok = false;
        detail = label(key);
      }
    }
    report(4, "hairy vs forest-side duality", ok, detail);
  }

  // 5: two-colored tree blocks match the free-Lie kernel oracle.
  {
    bool ok = true;
    std::string detail;
    const std::vector<int> m{2, 3};
    for (const auto& s : multidegrees(2, 4)) {
      if (std::accumulate(s.begin(), s.end(), 0) < 1) continue;
      auto dims = tree_dims(m, 9, s);
      auto oracle = hc::tree_homology_oracle(m, 9, s);
      std::map<long, int> expect;
      if (oracle.dim != 0) expect[oracle.degree] = static_cast<int>(oracle.dim);
      if (dims != expect) {
        ok = false;
        detail = "s=" + std::to_string(s[0]) + "," + std::to_string(s[1]);
      }
    }
    report(5, "tree homology vs Lie oracle", ok, detail);
  }

  // 6: degree-0 homology counts the Whitehead-bracket kernel.
  {
    bool ok = true;
    std::string detail;
    const std::vector<std::pair<std::vector<int>, int>> cases{
        {{3}, 7}, {{3}, 8}, {{3}, 9}, {{2, 3}, 9}, {{3, 3}, 9}};
    for (const auto& [m, d] : cases) {
      if (tree_h0_sum(m, d, 4) != hc::whitehead_kernel_dim(m, d)) {
        ok = false;
        detail = "d=" + std::to_string(d);
      }
    }
    // one-colored pattern: the kernel is ZZ/0 with a single class exactly for
    // d in {2m, 2m+1}
    for (int m : {2, 3})
      for (int d : dims_d) {
        if (d - m <= 2) continue;
        hc::Int wk = hc::whitehead_kernel_dim({m}, d);
        hc::Int expect = (d == 2 * m || d == 2 * m + 1) ? 1 : 0;
        if (wk != expect || tree_h0_sum({m}, d, 4) != wk) {
          ok = false;
          detail = "m=" + std::to_string(m) + " d=" + std::to_string(d);
        }
      }
    report(6, "pi-0 vs Whitehead kernel", ok, detail);
  }

  // 7: above codimension 2, positive genus forces positive degree.
  {
    bool ok = true;
    std::string detail;
    for (const auto& m : mbars)
      for (int d : dims_d) {
        if (d - *std::max_element(m.begin(), m.end()) <= 2) continue;
        hc::HairyParams p{m, d};
        for (const auto& s : multidegrees(static_cast<int>(m.size()), 4))
          for (int t = 0; t <= 2; ++t)
            for (const auto& gen : hc::enumerate_generators(p, s, t)) {
              auto g = hc::hairy_gradings(gen.graph, static_cast<int>(m.size()));
              if (g.genus >= 1 && hc::hairy_degree(gen.graph, p) < 1) {
                ok = false;
                detail = label({m, d, s, t, hc::ComplexKind::HairyPi});
              }
            }
      }
    report(7, "positive genus has positive degree", ok, detail);
  }

  // 8: admissible monomial counts match the configuration-space Poincare
  // coefficients (the count per power of q^{n-1} is independent of n).
  {
    bool ok = true;
    for (int k = 0; k <= 6; ++k) {
      auto basis = hc::admissible_basis(k, false);
      auto coeffs = hc::config_poincare_coeffs(k);
      if (basis.size() != coeffs.size()) ok = false;
      for (std::size_t e = 0; ok && e < coeffs.size(); ++e)
        if (hc::Int(basis[e].size()) != coeffs[e]) ok = false;
    }
    report(8, "Arnold basis vs Poincare coefficients", ok);
  }

  // 9: the colored-side dimension formula agrees with the forest recount.
  {
    bool ok = true;
    std::string detail;
    for (const auto& m : mbars) {
      const int r = static_cast<int>(m.size());
      for (const auto& kbar : multidegrees(r, 5))
        for (const auto& s : multidegrees(r, 5)) {
          bool fits = true;
          for (int i = 0; i < r; ++i)
            if (s[i] > kbar[i]) fits = false;
          if (!fits) continue;
          auto a = hc::kq_dimension(m, s, kbar);
          auto b = hc::kq_dimension_recount(m, s, kbar);
          if (a.degree != b.degree || a.dim != b.dim) {
            ok = false;
            detail = "k=" + std::to_string(kbar[0]);
          }
        }
    }
    report(9, "KQ dimension vs forest recount", ok, detail);
  }

  // 10: Euler characteristics agree chain-vs-homology and across the duality.
  {
    bool ok = true;
    std::string detail;
    for (const auto& [key, comp] : table.done) {
      hc::Int chain = 0, homology = 0;
      for (const auto& slice : comp.slices) {
        chain += hc::Int(hc::pow_sign(slice.degree)) * slice.chain_dim;
        homology += hc::Int(hc::pow_sign(slice.degree)) * slice.homology_dim;
      }
      if (chain != homology) {
        ok = false;
        detail = label(key);
      }
      if (key.kind == hc::ComplexKind::HairyPi) {
        hc::BlockKey dual = key;
        dual.kind = hc::ComplexKind::KoszulPi;
        auto it = table.done.find(dual);
        if (it == table.done.end() || it->second.euler_homology != homology) {
          ok = false;
          detail = label(key);
        }
      }
    }
    report(10, "Euler characteristic consistency", ok, detail);
  }

  // 11: vertex-count truncation reproduces the full table once the bound
  // reaches the maximal vertex count 2t of the block.
  {
    bool ok = true;
    std::string detail;
    const std::vector<hc::BlockKey> cases{
        {{2}, 6, {2}, 1, hc::ComplexKind::KoszulPi},
        {{2}, 6, {1}, 2, hc::ComplexKind::KoszulPi},
        {{2}, 7, {3}, 2, hc::ComplexKind::KoszulPi},
        {{2, 3}, 9, {1, 1}, 1, hc::ComplexKind::KoszulPi},
        {{3}, 8, {2}, 2, hc::ComplexKind::KoszulFull},
    };
    for (const auto& key : cases) {
      auto full = hc::homology_by_degree(hc::compute_block(key));
      for (int n = 2 * key.t; n <= 2 * key.t + 2; ++n)
        if (hc::homology_by_degree(hc::truncated_block(key, n)) != full) {
          ok = false;
          detail = label(key) + " n=" + std::to_string(n);
        }
    }
    report(11, "truncation stabilization", ok, detail);
  }

  // 12: identical runs produce byte-identical record output.
  {
    bool ok = false;
    std::string detail = "hairycalc binary path not provided";
    if (!cli.empty()) {
      const std::string base = "\"" + cli +
                               "\" homology --m 2 --d 7 --max-hairs 3 --max-complexity 2"
                               " --complex hairy,koszul-pi --workers 2 --format csv --output ";
      int rc1 = std::system((base + "acceptance_run1.csv").c_str());
      int rc2 = std::system((base + "acceptance_run2.csv").c_str());
      std::string a = read_file("acceptance_run1.csv");
      std::string b = read_file("acceptance_run2.csv");
      ok = rc1 == 0 && rc2 == 0 && !a.empty() && a == b;
      detail = "runs differ or failed";
    }
    report(12, "byte-identical reruns", ok, detail);
  }

  std::cout << (failures == 0 ? "ALL CRITERIA PASS" : "FAILURES PRESENT") << std::endl;
  return failures == 0 ? 0 : 1;
}
