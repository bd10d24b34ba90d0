#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "ink/nat.hpp"

using ink::Nat;

TEST_CASE("small pairing agrees with the closed form") {
  for (uint64_t a = 0; a < 40; ++a)
    for (uint64_t b = 0; b < 40; ++b) {
      Nat p = Nat::pair(a, b);
      uint64_t s = a + b;
      REQUIRE(p.as_u64() == s * (s + 1) / 2 + b);
      auto [x, y] = p.unpair();
      REQUIRE(x.as_u64() == a);
      REQUIRE(y.as_u64() == b);
    }
}

TEST_CASE("unpair is total and inverts pair on every natural") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    uint64_t n = rng() >> (rng() % 40);
    auto [a, b] = Nat(n).unpair();
    REQUIRE(Nat::pair(a, b) == Nat(n));
  }
}

TEST_CASE("large pairs stay structural and compare without materialising") {
  Nat big = 1;
  for (int i = 0; i < 200; ++i) big = Nat::pair(big, big);
  // ~2^200 doublings of magnitude: far beyond any materialisable size.
  REQUIRE(big.log2_lo() > 1e9);
  Nat big2 = 1;
  for (int i = 0; i < 200; ++i) big2 = Nat::pair(big2, big2);
  REQUIRE(big == big2);
  REQUIRE(Nat(5) < big);
  REQUIRE_THROWS_AS(big.to_mpz(), ink::resource_limit_error);
  Nat small_pair = Nat::pair(3, 4);
  REQUIRE(small_pair < big);
}

TEST_CASE("pair DAG teardown does not overflow the stack") {
  Nat list = 0;
  for (int i = 0; i < 300000; ++i) list = Nat::pair(7, list);
  REQUIRE(!list.is_zero());
  list = 0;  // deep chain destroyed here
  REQUIRE(list.is_zero());
}

TEST_CASE("mixed-representation equality is semantic") {
  Nat a = Nat::pair(Nat::from_decimal("123456789123456789123456789"), 5);
  Nat b(a.to_mpz());  // same value, numeric representation
  REQUIRE(a == b);
  REQUIRE(b == a);
  auto [l, r] = b.unpair();
  REQUIRE(l == Nat::from_decimal("123456789123456789123456789"));
  REQUIRE(r == Nat(5));
}

TEST_CASE("arithmetic helpers") {
  REQUIRE(Nat(0).inc() == Nat(1));
  REQUIRE(Nat(10).dec() == Nat(9));
  REQUIRE(Nat(10).dbl() == Nat(20));
  REQUIRE(Nat(11).half() == Nat(5));
  REQUIRE(Nat(11).odd());
  REQUIRE(!Nat(12).odd());
  REQUIRE_THROWS(Nat(0).dec());
  Nat w(UINT64_MAX);
  REQUIRE(w.inc().to_decimal() == "18446744073709551616");
  REQUIRE(w.inc().dec() == w);
  REQUIRE(Nat::from_decimal("12345").as_u64() == 12345);
}

TEST_CASE("ordering is total and consistent") {
  std::mt19937_64 rng(11);
  std::vector<Nat> vals;
  for (int i = 0; i < 50; ++i) {
    Nat v(rng() >> (rng() % 50));
    vals.push_back(v);
    vals.push_back(Nat::pair(v, rng() % 100));
  }
  for (const Nat& a : vals)
    for (const Nat& b : vals) {
      int c = a.cmp(b);
      REQUIRE(c == -b.cmp(a));
      mpz_class av(a.to_mpz()), bv(b.to_mpz());
      if (c == 0) {
        REQUIRE(av == bv);
      } else if (c < 0) {
        REQUIRE(av < bv);
      }
    }
}
