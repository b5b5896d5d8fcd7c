#include <doctest.h>

#include "gca/configuration.hpp"
#include "groups.hpp"

using namespace gca;

TEST_CASE("finite configurations") {
  Configuration c = Configuration::finite({{-2, 1}, {3, 2}, {5, 0}});
  CHECK(c.is_finite());
  CHECK(c.at(-2) == 1);
  CHECK(c.at(3) == 2);
  CHECK(c.at(100) == 0);
  CHECK(c.leftmost_nonidentity() == -2);
  CHECK(c.rightmost_nonidentity() == 3);
  CHECK(c.support().size() == 2);
  CHECK(Configuration().is_identity());
  CHECK(Configuration::finite({{4, 0}}) == Configuration());
}

TEST_CASE("canonical form makes equal configurations compare equal") {
  CHECK(Configuration::periodic({1, 0, 1, 0}) == Configuration::periodic({1, 0}));
  CHECK(Configuration::periodic({1, 0}, 1) == Configuration::periodic({0, 1}));
  CHECK_FALSE(Configuration::periodic({1, 0}) == Configuration::periodic({0, 1}));
  Configuration a = Configuration::eventually_periodic({1}, {1, 1, 2}, 0, {0});
  Configuration b = Configuration::eventually_periodic({1}, {2}, 2, {0, 0});
  CHECK(a == b);
  std::mt19937 rng(3);
  for (int t = 0; t < 50; ++t) {
    Configuration c = fixture::random_ep(rng, 3);
    Configuration rebuilt = Configuration::tabulate(c.core_start() - 7, c.core_end() + 7, c.left().size(),
                                                    c.right().size(), [&](long long i) { return c.at(i); });
    CHECK(rebuilt == c);
  }
}

TEST_CASE("shifting moves every cell") {
  std::mt19937 rng(5);
  for (int t = 0; t < 30; ++t) {
    Configuration c = fixture::random_ep(rng, 4);
    Configuration s = c.shifted(3);
    for (long long i = -20; i <= 20; ++i) CHECK(s.at(i) == c.at(i + 3));
  }
}

TEST_CASE("pointwise product and cell maps") {
  FiniteGroup z3 = FiniteGroup::cyclic(3);
  std::mt19937 rng(7);
  Configuration a = fixture::random_ep(rng, 3), b = fixture::random_ep(rng, 3);
  Configuration p = pointwise_op(z3, a, b);
  Configuration m = map_cells(a, [](Elem x) { return (2 * x) % 3; });
  for (long long i = -25; i <= 25; ++i) {
    CHECK(p.at(i) == (a.at(i) + b.at(i)) % 3);
    CHECK(m.at(i) == (2 * a.at(i)) % 3);
  }
}

TEST_CASE("distance exponent is the first mismatch radius") {
  std::mt19937 rng(11);
  for (int t = 0; t < 40; ++t) {
    Configuration a = fixture::random_finite(rng, 2, -4, 4), b = fixture::random_finite(rng, 2, -4, 4);
    std::optional<long long> want;
    for (long long r = 0; r <= 10 && !want; ++r)
      if (a.at(r) != b.at(r) || a.at(-r) != b.at(-r)) want = r;
    CHECK(distance_exponent(a, b) == want);
  }
}
