#include <cmath>
#include <set>

#include "doctest.h"

#include "creep/rng.hpp"

using namespace creep;

TEST_CASE("philox4x32-10 known-answer vectors") {
  CHECK(philox4x32_10({0, 0, 0, 0}, {0, 0}) ==
        Philox4x32Ctr{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(philox4x32_10({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
        Philox4x32Ctr{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(philox4x32_10({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
        Philox4x32Ctr{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("streams are pure functions of seed, path and substream") {
  Stream a(42, 7, kStreamY), b(42, 7, kStreamY);
  for (int i = 0; i < 1000; ++i) REQUIRE(a.next_u64() == b.next_u64());

  Stream c(42, 7, kStreamZ), d(42, 8, kStreamY), e(43, 7, kStreamY);
  Stream ref(42, 7, kStreamY);
  const auto r = ref.next_u64();
  CHECK(c.next_u64() != r);
  CHECK(d.next_u64() != r);
  CHECK(e.next_u64() != r);
}

TEST_CASE("uniforms lie in the open unit interval with the right moments") {
  Stream s(1, 0, kStreamAux);
  const int n = 200000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = s.uniform();
    REQUIRE(u > 0.0);
    REQUIRE(u < 1.0);
    sum += u;
    sum2 += u * u;
  }
  CHECK(sum / n == doctest::Approx(0.5).epsilon(0.005));
  CHECK(sum2 / n - std::pow(sum / n, 2) == doctest::Approx(1.0 / 12.0).epsilon(0.01));
}

TEST_CASE("exponential and normal draws") {
  Stream s(5, 3, kStreamAux);
  const int n = 200000;
  double se = 0.0, sn = 0.0, sn2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double e = s.exponential();
    REQUIRE(e > 0.0);
    se += e;
    const double z = s.normal();
    sn += z;
    sn2 += z * z;
  }
  CHECK(se / n == doctest::Approx(1.0).epsilon(0.01));
  CHECK(std::abs(sn / n) < 0.01);
  CHECK(sn2 / n == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("no repeats in a long draw") {
  Stream s(9, 0, kStreamKill);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 100000; ++i) seen.insert(s.next_u64());
  CHECK(seen.size() == 100000);
}
