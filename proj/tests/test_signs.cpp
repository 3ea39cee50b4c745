#include <catch_amalgamated.hpp>

#include <numeric>
#include <random>

#include "hairycalc/signs.hpp"

using namespace hairycalc;

TEST_CASE("element degrees") {
  std::vector<int> m{2, 3};
  CHECK(element_degree(ElemKind::NonColoredEdge, 0, 6, m) == 5);
  CHECK(element_degree(ElemKind::InternalVertex, 0, 6, m) == -6);
  CHECK(element_degree(ElemKind::ExternalVertex, 0, 6, m) == -2);
  CHECK(element_degree(ElemKind::ExternalVertex, 1, 6, m) == -3);
  CHECK(element_degree(ElemKind::ColoredComponent, 1, 6, m) == -3);
  CHECK(element_degree(ElemKind::ColoredEdge, 0, 6, m) == -1);
  CHECK(element_degree(ElemKind::ColoredEdge, 1, 6, m, ColoredEdgeConvention::Oriented) == 2);
  CHECK_THROWS_AS(element_degree(ElemKind::ExternalVertex, 2, 6, m), std::invalid_argument);
  CHECK_THROWS_AS(element_degree(ElemKind::ColoredEdge, -1, 6, m), std::invalid_argument);
}

TEST_CASE("koszul sign basics") {
  std::vector<long> degs{1, 1, 2, 3};
  std::vector<int> id{0, 1, 2, 3};
  CHECK(koszul_sign(id, degs) == 1);
  CHECK(koszul_sign({1, 0, 2, 3}, degs) == -1);  // two odd elements cross
  CHECK(koszul_sign({0, 2, 1, 3}, degs) == 1);   // odd crosses even
  CHECK(koszul_sign({0, 1, 3, 2}, degs) == 1);  // degrees 2 and 3: only one is odd
  CHECK_THROWS_AS(koszul_sign({0, 0, 1, 2}, degs), std::invalid_argument);
  CHECK_THROWS_AS(koszul_sign({0, 1, 2}, degs), std::invalid_argument);
}

TEST_CASE("permutation fixing odd elements has sign +1") {
  // degrees: odd at positions 0 and 3, even elsewhere
  std::vector<long> degs{3, 2, 4, 5, 0};
  std::vector<int> perm{0, 2, 4, 3, 1};  // permutes only the even elements
  CHECK(koszul_sign(perm, degs) == 1);
}

TEST_CASE("koszul sign cocycle under composition") {
  std::mt19937 rng(12345);
  std::vector<long> degs{1, 2, 3, 4, 5, 6};
  const std::size_t n = degs.size();
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<int> sigma(n), tau(n);
    std::iota(sigma.begin(), sigma.end(), 0);
    std::iota(tau.begin(), tau.end(), 0);
    std::shuffle(sigma.begin(), sigma.end(), rng);
    std::shuffle(tau.begin(), tau.end(), rng);
    // applying sigma then tau to the reordered list
    std::vector<int> composite(n);
    std::vector<long> permuted_degs(n);
    for (std::size_t p = 0; p < n; ++p) {
      composite[p] = sigma[tau[p]];
      permuted_degs[p] = degs[sigma[p]];
    }
    CHECK(koszul_sign(composite, degs) ==
          koszul_sign(sigma, degs) * koszul_sign(tau, permuted_degs));
  }
}

TEST_CASE("koszul sign is a homomorphism on parity-homogeneous lists") {
  std::mt19937 rng(99);
  for (long base : {1L, 2L}) {
    std::vector<long> degs(5, base);
    for (int trial = 0; trial < 30; ++trial) {
      std::vector<int> sigma(5), tau(5), composite(5);
      std::iota(sigma.begin(), sigma.end(), 0);
      std::iota(tau.begin(), tau.end(), 0);
      std::shuffle(sigma.begin(), sigma.end(), rng);
      std::shuffle(tau.begin(), tau.end(), rng);
      for (int p = 0; p < 5; ++p) composite[p] = sigma[tau[p]];
      CHECK(koszul_sign(composite, degs) == koszul_sign(sigma, degs) * koszul_sign(tau, degs));
    }
  }
}

TEST_CASE("edge flip signs") {
  std::vector<int> m{2, 3};
  CHECK(edge_flip_sign(ElemKind::NonColoredEdge, 6, m) == 1);
  CHECK(edge_flip_sign(ElemKind::NonColoredEdge, 7, m) == -1);
  CHECK(edge_flip_sign(ElemKind::ColoredEdge, 6, m, 0) == 1);
  CHECK(edge_flip_sign(ElemKind::ColoredEdge, 6, m, 1) == -1);
  CHECK_THROWS_AS(edge_flip_sign(ElemKind::InternalVertex, 6, m), std::invalid_argument);
  CHECK_THROWS_AS(edge_flip_sign(ElemKind::ColoredEdge, 6, m, 5), std::invalid_argument);
}
