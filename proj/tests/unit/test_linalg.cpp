#include <carrier/linalg.hpp>
#include <doctest.h>

using namespace carrier;

namespace {
Vector v(std::initializer_list<int> xs) {
  Vector out;
  for (int x : xs) out.emplace_back(x);
  return out;
}
}  // namespace

TEST_CASE("subspace basis is canonical") {
  std::vector<Vector> a{v({1, 2, 3}), v({2, 4, 7})};
  std::vector<Vector> b{v({0, 0, 1}), v({3, 6, 0})};
  CHECK(Subspace::span(3, a) == Subspace::span(3, b));
  CHECK(Subspace::span(3, a).dim() == 2);
  CHECK(Subspace::span(3, a).contains(v({-1, -2, 5})));
  CHECK_FALSE(Subspace::span(3, a).contains(v({0, 1, 0})));
}

TEST_CASE("reduce gives the same representative for equal cosets") {
  std::vector<Vector> g{v({1, 1, 0})};
  auto s = Subspace::span(3, g);
  CHECK(s.reduce(v({3, 1, 2})) == s.reduce(v({5, 3, 2})));
  CHECK(s.reduce(v({3, 1, 2})) != s.reduce(v({3, 1, 3})));
}

TEST_CASE("intersection and sum dimensions") {
  std::vector<Vector> a{v({1, 0, 0, 0}), v({0, 1, 0, 0})};
  std::vector<Vector> b{v({0, 1, 0, 0}), v({0, 0, 1, 0})};
  auto sa = Subspace::span(4, a), sb = Subspace::span(4, b);
  CHECK(intersect(sa, sb).dim() == 1);
  CHECK(intersect(sa, sb).contains(v({0, 7, 0, 0})));
  CHECK(sum(sa, sb).dim() == 3);
  CHECK(quotient_dim(4, sum(sa, sb)) == 1);
}

TEST_CASE("solve and null space") {
  auto m = Matrix::from_rows({v({1, 2, 1}), v({2, 4, 0})}, 3);
  auto sol = solve(m, v({3, 2}));
  REQUIRE(sol);
  CHECK(m.apply(sol->particular) == v({3, 2}));
  REQUIRE(sol->null_basis.size() == 1);
  CHECK(is_zero(m.apply(sol->null_basis[0])));
  CHECK_FALSE(solve(Matrix::from_rows({v({1, 1}), v({2, 2})}, 2), v({1, 3})));
  CHECK(m.rank() == 2);
  CHECK(m.is_surjective());
  CHECK_FALSE(m.is_injective());
}

TEST_CASE("rational parsing") {
  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK(to_string(Rational(-3, 2)) == "-3/2");
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("abc"));
}
