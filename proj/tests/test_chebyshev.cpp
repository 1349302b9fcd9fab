#include <doctest.h>

#include <random>

#include "twistlab/chebyshev.hpp"

using namespace twistlab;

namespace {

ChebPoly poly(std::initializer_list<long> c) {
  std::vector<Integer> v;
  for (long x : c) v.emplace_back(x);
  return ChebPoly(v);
}

const ChebPoly kT = poly({0, 1});

ModMatrix random_sl2(std::int64_t m, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> d(0, m - 1);
  for (;;) {
    auto a = ModMatrix::from_rows({{d(rng), d(rng)}, {d(rng), d(rng)}}, Modulus(m));
    if (det2(a) == 1) return a;
  }
}

}  // namespace

TEST_SUITE("chebyshev") {

TEST_CASE("initial values and small cases") {
  CHECK(q_poly(0) == poly({1}));
  CHECK(q_poly(1) == kT);
  CHECK(q_poly(4) == poly({1, 0, -3, 0, 1}));
  CHECK(q_poly(5) == poly({0, 3, 0, -4, 0, 1}));
  CHECK(q_explicit(0) == poly({1}));
  CHECK(q_explicit(5) == poly({0, 3, 0, -4, 0, 1}));
}

TEST_CASE("Q_5 factorization") {
  auto f = kT * (kT - poly({1})) * (kT + poly({1})) * (kT * kT - poly({3}));
  CHECK(q_poly(5) == f);
}

TEST_CASE("closed form matches the recurrence") {
  for (std::uint64_t n = 0; n <= 90; ++n) {
    INFO("n = " << n);
    REQUIRE(q_explicit(n) == q_poly(n));
    REQUIRE(q_poly(n).degree() == static_cast<int>(n));
    REQUIRE(q_poly(n).leading() == 1);
  }
  // Coefficients outgrow 64 bits: Q_200 still agrees exactly.
  CHECK(q_explicit(200) == q_poly(200));
  CHECK(q_poly(200).coeff(100) > Integer("18446744073709551616"));
}

TEST_CASE("q_eval agrees with polynomial evaluation") {
  for (std::uint64_t n = 0; n <= 30; ++n)
    for (long t = -7; t <= 7; ++t) {
      REQUIRE(q_eval(n, t, Modulus(0)) == q_poly(n).evaluate(t));
      for (std::int64_t m : {2, 3, 6, 7, 12})
        REQUIRE(q_eval(n, t, Modulus(m)) == Modulus(m).reduce(q_poly(n).evaluate(t)));
    }
}

TEST_CASE("Q_{D-1}(0) table") {
  for (std::uint64_t d = 1; d <= 200; ++d) {
    Integer want = d % 2 == 0 ? 0 : ((d - 1) / 2 % 2 == 0 ? 1 : -1);
    REQUIRE(q_eval(d - 1, 0, Modulus(0)) == want);
  }
}

TEST_CASE("Q_{D-1}(1) table") {
  for (std::uint64_t d = 1; d <= 200; ++d) {
    const auto r = d % 6;
    Integer want = (r == 1 || r == 2) ? 1 : (r == 4 || r == 5) ? -1 : 0;
    REQUIRE(q_eval(d - 1, 1, Modulus(0)) == want);
  }
}

TEST_CASE("Q_{D-1}(-1) values") {
  // Q_n(-1) has period 3: 1, -1, 0, 1, -1, 0, ...
  for (std::uint64_t d = 1; d <= 200; ++d) {
    const auto r = d % 3;
    Integer want = r == 1 ? 1 : r == 2 ? -1 : 0;
    REQUIRE(q_eval(d - 1, -1, Modulus(0)) == want);
  }
  // The commonly printed table (1 for D = 2, -1 for D = 0, 0 for D = 1 mod 3) is the
  // one for Q_{D-2}(-1), not Q_{D-1}(-1).
  for (std::uint64_t d = 2; d <= 200; ++d) {
    const auto r = d % 3;
    Integer printed = r == 2 ? 1 : r == 0 ? -1 : 0;
    REQUIRE(q_eval(d - 2, -1, Modulus(0)) == printed);
  }
  CHECK(q_eval(1, -1, Modulus(0)) == -1);  // D = 2: Q_1(-1) = -1, the printed table says 1
}

TEST_CASE("sl2 power identity") {
  CHECK(sl2_power_identity_check(ModMatrix::identity(2, Modulus(0)), 7));
  for (std::uint64_t d = 1; d <= 30; ++d) REQUIRE(sl2_power_identity_check(ModMatrix::identity(2, Modulus(0)), d));

  auto u = ModMatrix::from_rows({{1, 1}, {0, 1}}, Modulus(0));
  CHECK(mat_pow(u, 5) == ModMatrix::from_rows({{1, 5}, {0, 1}}, Modulus(0)));
  CHECK(q_eval(4, 2, Modulus(0)) == 5);
  CHECK(q_eval(3, 2, Modulus(0)) == 4);
  CHECK(sl2_power_identity_check(u, 5));

  std::mt19937_64 rng(35);
  std::uniform_int_distribution<std::uint64_t> dd(2, 50);
  for (int k = 0; k < 1000; ++k) REQUIRE(sl2_power_identity_check(random_sl2(35, rng), dd(rng)));

  CHECK_THROWS_AS(sl2_power_identity_check(ModMatrix::from_rows({{2, 0}, {0, 1}}, Modulus(0)), 3),
                  std::invalid_argument);
}

TEST_CASE("mod-6 degeneracy") {
  CHECK(mod6_degeneracy_check(1));
  for (std::uint64_t k = 2; k <= 20; ++k) REQUIRE(mod6_degeneracy_check(k));
  // Control: Q_4 does not vanish mod 6.
  CHECK(q_eval(4, 0, Modulus(6)) == 1);
}

TEST_CASE("Cayley-Hamilton step behind the power identity") {
  std::mt19937_64 rng(9);
  for (int k = 0; k < 50; ++k) {
    auto a = random_sl2(12, rng);
    auto lhs = mat_pow(a, 2);
    auto rhs = mat_sub(a.scaled(a.trace()), ModMatrix::identity(2, Modulus(12)));
    REQUIRE(lhs == rhs);
  }
}

}  // TEST_SUITE
