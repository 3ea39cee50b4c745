#include <catch_amalgamated.hpp>

#include <numeric>
#include <random>

#include "hairycalc/lie.hpp"

using namespace hairycalc;

TEST_CASE("configuration space Poincare coefficients") {
  CHECK(config_poincare_coeffs(1) == std::vector<Int>{1});
  CHECK(config_poincare_coeffs(2) == std::vector<Int>{1, 1});
  CHECK(config_poincare_coeffs(4) == std::vector<Int>{1, 6, 11, 6});
  CHECK_THROWS_AS(config_poincare_coeffs(-1), std::invalid_argument);
}

TEST_CASE("multilinear free Lie dimensions") {
  CHECK(lie_operad_dim(1) == 1);
  CHECK(lie_operad_dim(3) == 2);
  CHECK(lie_operad_dim(5) == 24);
  CHECK_THROWS_AS(lie_operad_dim(0), std::invalid_argument);
}

TEST_CASE("free graded Lie dims: one generator") {
  // even generator: abelian, one-dimensional
  auto even = free_graded_lie_dims({2}, 5);
  CHECK(even[{1}] == 1);
  for (int w = 2; w <= 5; ++w) CHECK(even[{w}] == 0);

  // odd generator: [x,x] survives, [[x,x],x] does not
  auto odd = free_graded_lie_dims({3}, 5);
  CHECK(odd[{1}] == 1);
  CHECK(odd[{2}] == 1);
  for (int w = 3; w <= 5; ++w) CHECK(odd[{w}] == 0);
}

TEST_CASE("free graded Lie dims: two odd generators of degree 1") {
  auto dims = free_graded_lie_dims({1, 1}, 3);
  CHECK(dims[{2, 0}] == 1);
  CHECK(dims[{1, 1}] == 1);
  CHECK(dims[{0, 2}] == 1);
}

TEST_CASE("even generators reproduce the Witt numbers") {
  // two generators in even degree behave like the ungraded free Lie algebra
  auto dims = free_graded_lie_dims({2, 2}, 6);
  auto total = [&](int w) {
    Int sum = 0;
    for (const auto& mw : weights_of_total(2, w)) {
      auto it = dims.find(mw);
      if (it != dims.end()) sum += it->second;
    }
    return sum;
  };
  // necklace numbers (1/w) sum_{e|w} mu(e) 2^{w/e}
  CHECK(total(1) == 2);
  CHECK(total(2) == 1);
  CHECK(total(3) == 2);
  CHECK(total(4) == 3);
  CHECK(total(5) == 6);
  CHECK(total(6) == 9);
}

TEST_CASE("explicit bracket basis agrees with the series inversion") {
  for (std::vector<long> degrees : {std::vector<long>{1, 2}, std::vector<long>{3, 4},
                                    std::vector<long>{2}, std::vector<long>{3}}) {
    FreeLieBasis lie(degrees);
    auto dims = free_graded_lie_dims(degrees, 4);
    for (int w = 1; w <= 4; ++w)
      for (const auto& mw : weights_of_total(static_cast<int>(degrees.size()), w)) {
        auto it = dims.find(mw);
        Int expect = it == dims.end() ? Int(0) : it->second;
        CHECK(Int(lie.basis(mw).size()) == expect);
      }
  }
}

TEST_CASE("graded antisymmetry and Jacobi") {
  std::vector<long> degrees{1, 2};
  FreeLieBasis lie(degrees);
  std::vector<std::pair<TensorElement, long>> elems;  // (element, degree)
  for (int w = 1; w <= 2; ++w)
    for (const auto& mw : weights_of_total(2, w))
      for (const auto& e : lie.basis(mw)) elems.emplace_back(e, weight_degree(mw, degrees));

  auto scaled = [](const TensorElement& e, const Rat& c) {
    TensorElement out;
    tensor_add(out, e, c);
    return out;
  };
  for (const auto& [u, du] : elems)
    for (const auto& [v, dv] : elems) {
      // [u,v] = -(-1)^{|u||v|} [v,u]
      TensorElement lhs = graded_bracket(u, v, degrees);
      TensorElement rhs = scaled(graded_bracket(v, u, degrees), -Rat(pow_sign(du * dv)));
      CHECK(lhs == rhs);
      for (const auto& [w, dw] : elems) {
        // [u,[v,w]] = [[u,v],w] + (-1)^{|u||v|} [v,[u,w]]
        TensorElement left = graded_bracket(u, graded_bracket(v, w, degrees), degrees);
        TensorElement right = graded_bracket(graded_bracket(u, v, degrees), w, degrees);
        tensor_add(right, graded_bracket(v, graded_bracket(u, w, degrees), degrees),
                   Rat(pow_sign(du * dv)));
        CHECK(left == right);
      }
    }
}

TEST_CASE("whitehead kernel dimensions") {
  CHECK(whitehead_kernel_dim({3}, 7) == 1);
  CHECK(whitehead_kernel_dim({3}, 8) == 0);
  CHECK(whitehead_kernel_dim({3}, 6) == 1);
  CHECK_THROWS_AS(whitehead_kernel_dim({3}, 5), std::invalid_argument);
}

TEST_CASE("tree homology oracle") {
  auto line = tree_homology_oracle({2}, 6, {2});
  CHECK(line.degree == 1);  // d - 2m - 1
  CHECK(line.dim == 1);

  auto tripod = tree_homology_oracle({2}, 7, {3});
  CHECK(tripod.degree == 5);  // (d-1)|E| - d - 3m on the 3-star
  CHECK(tripod.dim == 1);

  // weight one: the bracket-kernel model is empty
  CHECK(tree_homology_oracle({2}, 6, {1}).dim == 0);
  CHECK(tree_homology_oracle({2, 3}, 9, {1, 0}).dim == 0);

  CHECK_THROWS_AS(tree_homology_oracle({2}, 6, {1, 1}), std::invalid_argument);
}
