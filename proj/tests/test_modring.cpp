#include <doctest.h>

#include <random>

#include "twistlab/modring.hpp"

using namespace twistlab;

namespace {

ModMatrix random_matrix(std::size_t dim, std::int64_t m, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> d(-3 * m, 3 * m);
  std::vector<Integer> e(dim * dim);
  for (auto& x : e) x = d(rng);
  return ModMatrix::from_entries(dim, e, Modulus(m));
}

}  // namespace

TEST_SUITE("modring") {

TEST_CASE("residues are canonical") {
  Modulus m(7);
  CHECK(m.reduce(std::int64_t{-1}) == 6);
  CHECK(m.reduce(Integer(-15)) == 6);
  CHECK(Modulus(0).reduce(Integer(-15)) == -15);
  CHECK(symmetric_residue(Integer(6), m) == -1);
  CHECK(symmetric_residue(Integer(3), m) == 3);
  CHECK(symmetric_residue(Integer(4), Modulus(8)) == 4);
  CHECK_THROWS_AS(Modulus(-3), std::invalid_argument);
}

TEST_CASE("entries are stored reduced") {
  auto a = ModMatrix::from_rows({{-1, 8}, {13, 5}}, Modulus(5));
  CHECK(a == ModMatrix::from_rows({{4, 3}, {3, 0}}, Modulus(5)));
  CHECK(det2(a) == 1);  // 0 - 9 = -9 = 1 mod 5
  CHECK(a.trace() == 4);
}

TEST_CASE("mat_mul examples") {
  std::mt19937_64 rng(3);
  auto a = random_matrix(3, 11, rng);
  CHECK(mat_mul(ModMatrix::identity(3, Modulus(11)), a) == a);
  CHECK(mat_mul(a, ModMatrix::identity(3, Modulus(11))) == a);

  auto x = ModMatrix::from_rows({{1, 1}, {0, 1}}, Modulus(5));
  auto y = ModMatrix::from_rows({{1, 0}, {1, 1}}, Modulus(5));
  CHECK(mat_mul(x, y) == ModMatrix::from_rows({{2, 1}, {1, 1}}, Modulus(5)));

  for (int k = 0; k < 100; ++k) {
    auto p = random_matrix(4, 7, rng), q = random_matrix(4, 7, rng), r = random_matrix(4, 7, rng);
    REQUIRE(mat_mul(mat_mul(p, q), r) == mat_mul(p, mat_mul(q, r)));
  }
}

TEST_CASE("mixed rings are rejected") {
  auto a = ModMatrix::identity(2, Modulus(5));
  CHECK_THROWS(mat_mul(a, ModMatrix::identity(2, Modulus(7))));
  CHECK_THROWS(mat_mul(a, ModMatrix::identity(3, Modulus(5))));
}

TEST_CASE("mat_pow agrees with repeated products") {
  std::mt19937_64 rng(4);
  auto a = random_matrix(3, 9, rng);
  CHECK(mat_pow(a, 0) == ModMatrix::identity(3, Modulus(9)));
  CHECK(mat_pow(a, 1) == a);
  auto acc = ModMatrix::identity(3, Modulus(9));
  for (std::uint64_t k = 1; k <= 40; ++k) {
    acc = mat_mul(acc, a);
    REQUIRE(mat_pow(a, k) == acc);
  }
  CHECK(mat_pow(ModMatrix::from_rows({{0, 1}, {-1, 1}}, Modulus(7)), 6).is_identity());
  // Over Z the same matrix has order 6 as well.
  auto z = ModMatrix::from_rows({{0, 1}, {-1, 1}}, Modulus(0));
  CHECK(mat_pow(z, 6).is_identity());
  CHECK_FALSE(mat_pow(z, 3).is_identity());
}

TEST_CASE("mat_order examples") {
  CHECK(mat_order(ModMatrix::identity(4, Modulus(3)), 10) == 1u);
  CHECK(mat_order(ModMatrix::from_rows({{0, 1}, {-1, 1}}, Modulus(2)), 100) == 3u);
  CHECK(mat_order(ModMatrix::from_rows({{1, 1}, {0, 1}}, Modulus(5)), 100) == 5u);
  // Unipotent over Z: infinite, so every cap is exceeded.
  CHECK_FALSE(mat_order(ModMatrix::from_rows({{1, 1}, {0, 1}}, Modulus(0)), 1000).has_value());
  CHECK_FALSE(mat_order(ModMatrix::from_rows({{1, 1}, {0, 1}}, Modulus(5)), 4).has_value());
}

TEST_CASE("reduction, transpose, direct sum") {
  auto a = ModMatrix::from_rows({{5, -2}, {7, 3}}, Modulus(0));
  CHECK(a.reduced(Modulus(4)) == ModMatrix::from_rows({{1, 2}, {3, 3}}, Modulus(4)));
  CHECK(a.reduced(Modulus(4)).reduced(Modulus(2)) == a.reduced(Modulus(2)));
  CHECK_THROWS(a.reduced(Modulus(4)).reduced(Modulus(3)));
  CHECK(a.transpose().at(0, 1) == 7);
  CHECK(a.negated().at(1, 1) == -3);
  auto s = direct_sum(a, ModMatrix::identity(1, Modulus(0)));
  CHECK(s.dim() == 3);
  CHECK(s.at(2, 2) == 1);
  CHECK(s.at(0, 2) == 0);
  CHECK(s.at(1, 0) == 7);
}

TEST_CASE("hash follows equality") {
  auto a = ModMatrix::from_rows({{1, 2}, {3, 4}}, Modulus(5));
  auto b = ModMatrix::from_rows({{6, -3}, {8, 9}}, Modulus(5));
  REQUIRE(a == b);
  CHECK(std::hash<ModMatrix>{}(a) == std::hash<ModMatrix>{}(b));
}

}  // TEST_SUITE
