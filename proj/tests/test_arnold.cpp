#include <catch_amalgamated.hpp>

#include <numeric>
#include <random>

#include "hairycalc/arnold.hpp"
#include "hairycalc/lie.hpp"
#include "hairycalc/signs.hpp"

using namespace hairycalc;

namespace {

Monomial mono(std::vector<std::pair<int, int>> factors) { return Monomial{std::move(factors)}; }

}  // namespace

TEST_CASE("admissible basis counts") {
  auto k3 = admissible_basis(3, false);
  REQUIRE(k3.size() == 3);
  CHECK(k3[0].size() == 1);
  CHECK(k3[1].size() == 3);
  CHECK(k3[2].size() == 2);

  auto k2 = admissible_basis(2, true);
  CHECK(k2[0].empty());
  REQUIRE(k2[1].size() == 1);
  CHECK(k2[1][0] == mono({{1, 2}}));

  auto k1 = admissible_basis(1, true);
  for (const auto& level : k1) CHECK(level.empty());
}

TEST_CASE("admissible counts match the Poincare product") {
  for (int k = 0; k <= 7; ++k) {
    auto basis = admissible_basis(k, false);
    auto coeffs = config_poincare_coeffs(k);
    REQUIRE(basis.size() == coeffs.size());
    for (std::size_t e = 0; e < coeffs.size(); ++e)
      CHECK(Int(basis[e].size()) == coeffs[e]);
  }
}

TEST_CASE("arnold reduction of the inadmissible pair") {
  for (int n : {6, 7}) {
    auto sum = arnold_reduce({{1, 3}, {2, 3}}, n);
    MonomialSum expect;
    expect[mono({{1, 2}, {2, 3}})] = 1;
    expect[mono({{1, 2}, {1, 3}})] = -1;
    CHECK(sum == expect);
  }
}

TEST_CASE("squares vanish and orientations normalize") {
  CHECK(arnold_reduce({{1, 2}, {1, 2}}, 6).empty());
  CHECK(arnold_reduce({{2, 1}}, 6) == MonomialSum{{mono({{1, 2}}), 1}});
  CHECK(arnold_reduce({{2, 1}}, 7) == MonomialSum{{mono({{1, 2}}), -1}});
  CHECK_THROWS_AS(arnold_reduce({{2, 2}}, 6), std::invalid_argument);
}

TEST_CASE("the three-term relation reduces to zero") {
  for (int n : {6, 7}) {
    MonomialSum total;
    for (const auto& product : {std::vector<std::pair<int, int>>{{1, 2}, {2, 3}},
                                std::vector<std::pair<int, int>>{{2, 3}, {3, 1}},
                                std::vector<std::pair<int, int>>{{3, 1}, {1, 2}}}) {
      for (const auto& [m, c] : arnold_reduce(product, n)) {
        total[m] += c;
        if (total[m] == 0) total.erase(m);
      }
    }
    CHECK(total.empty());
  }
}

TEST_CASE("reduction is independent of factor order") {
  std::mt19937 rng(31);
  std::uniform_int_distribution<int> vertex(1, 5);
  for (int n : {6, 7}) {
    for (int trial = 0; trial < 60; ++trial) {
      std::vector<std::pair<int, int>> factors;
      const int len = 2 + trial % 3;
      for (int i = 0; i < len; ++i) {
        int a = vertex(rng), b = vertex(rng);
        while (b == a) b = vertex(rng);
        factors.emplace_back(a, b);
      }
      auto base = arnold_reduce(factors, n);

      std::vector<int> perm(len);
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      std::vector<std::pair<int, int>> shuffled;
      for (int i : perm) shuffled.push_back(factors[i]);
      // permuting factors of degree n-1 pays the Koszul sign
      int sign = parity(n) == 0 ? permutation_sign(perm) : 1;
      auto reordered = arnold_reduce(shuffled, n);
      MonomialSum expect;
      for (const auto& [m, c] : base) expect[m] = c * sign;
      CHECK(reordered == expect);
    }
  }
}

TEST_CASE("cross effect satisfies inclusion-exclusion") {
  auto binom = [](int n, int k) {
    Int b = 1;
    for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
    return b;
  };
  for (int k = 1; k <= 6; ++k) {
    auto covered = admissible_basis(k, true);
    std::vector<Int> expect(k == 0 ? 1 : k, 0);
    for (int j = 0; j <= k; ++j) {
      auto full = admissible_basis(j, false);
      Int c = binom(k, j) * ((k - j) % 2 == 0 ? 1 : -1);
      for (std::size_t e = 0; e < full.size(); ++e) expect[e] += c * Int(full[e].size());
    }
    REQUIRE(covered.size() == expect.size());
    for (std::size_t e = 0; e < expect.size(); ++e)
      CHECK(Int(covered[e].size()) == expect[e]);
  }
}
