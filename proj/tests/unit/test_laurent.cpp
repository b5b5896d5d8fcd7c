#include <doctest.h>

#include <map>
#include <random>

#include "gca/error.hpp"
#include "gca/laurent.hpp"

using namespace gca;

namespace {

LaurentPoly random_poly(std::mt19937& rng, std::uint32_t p) {
  std::map<int, std::uint32_t> m;
  std::uniform_int_distribution<std::uint32_t> c(0, p - 1);
  LaurentPoly out(p);
  for (int d = -2; d <= 2; ++d) out += LaurentPoly::monomial(p, c(rng), d);
  return out;
}

// Schoolbook product on coefficient maps.
std::map<int, std::uint32_t> naive_mul(const LaurentPoly& a, const LaurentPoly& b, std::uint32_t p) {
  std::map<int, std::uint32_t> out;
  for (auto [da, ca] : a.terms())
    for (auto [db, cb] : b.terms()) out[da + db] = (out[da + db] + ca * cb) % p;
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

LaurentMatrix random_matrix(std::mt19937& rng, std::uint32_t p, std::size_t n) {
  LaurentMatrix m(p, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m.at(i, j) = random_poly(rng, p);
  return m;
}

}  // namespace

TEST_CASE("parse and print round trip") {
  for (const char* s : {"0", "1", "X", "X^-1 + 1", "2X^-2 + X + 2X^3"}) {
    LaurentPoly f = LaurentPoly::parse(s, 3);
    CHECK(LaurentPoly::parse(f.to_string(), 3) == f);
  }
  CHECK(LaurentPoly::parse("X + X", 2).is_zero());
  CHECK(LaurentPoly::parse("X^-1 + 1", 2).to_string() == "X^-1 + 1");
  CHECK_THROWS_AS(LaurentPoly::parse("3X", 3), Error);
}

TEST_CASE("arithmetic agrees with coefficient maps") {
  std::mt19937 rng(8);
  for (std::uint32_t p : {2u, 3u, 5u})
    for (int t = 0; t < 40; ++t) {
      LaurentPoly a = random_poly(rng, p), b = random_poly(rng, p);
      CHECK((a * b).terms() == naive_mul(a, b, p));
      CHECK((a + b) - b == a);
      CHECK(a.shifted(3).shifted(-3) == a);
      const LaurentPoly m = a.mirrored();
      for (auto [d, c] : m.terms()) CHECK(a.coeff(-d) == c);
    }
  CHECK(LaurentPoly::parse("2X^3", 5).as_monomial() == std::pair<std::uint32_t, int>{2, 3});
  CHECK_FALSE(LaurentPoly::parse("1 + X", 5).as_monomial());
  for (std::uint32_t a = 1; a < 7; ++a) CHECK(a * inverse_mod(a, 7) % 7 == 1);
}

TEST_CASE("2x2 determinant is ad - bc and the adjugate inverts up to det") {
  std::mt19937 rng(12);
  for (std::uint32_t p : {2u, 3u})
    for (int t = 0; t < 30; ++t) {
      LaurentMatrix m = random_matrix(rng, p, 2);
      CHECK(det(m) == m.at(0, 0) * m.at(1, 1) - m.at(0, 1) * m.at(1, 0));
      LaurentMatrix prod = m * adjugate(m);
      LaurentMatrix want = LaurentMatrix::identity(p, 2).scaled(det(m));
      CHECK(prod == want);
    }
}

TEST_CASE("determinant is multiplicative on 3x3") {
  std::mt19937 rng(13);
  for (int t = 0; t < 10; ++t) {
    LaurentMatrix a = random_matrix(rng, 3, 3), b = random_matrix(rng, 3, 3);
    CHECK(det(a * b) == det(a) * det(b));
  }
}

TEST_CASE("matrix powers equal repeated products") {
  std::mt19937 rng(14);
  LaurentMatrix m = random_matrix(rng, 2, 2);
  LaurentMatrix acc = LaurentMatrix::identity(2, 2);
  for (int t = 0; t <= 5; ++t) {
    CHECK(matrix_power(m, t) == acc);
    acc = acc * m;
  }
}

TEST_CASE("matrix parsing and printing") {
  LaurentMatrix m = LaurentMatrix::parse({{"0", "1"}, {"1", "X"}}, 2);
  CHECK(m.to_string() == "[[0, 1], [1, X]]");
  CHECK(det(m).to_string() == "1");
  CHECK(m.mirrored().at(1, 1).to_string() == "X^-1");
  CHECK(m.coefficient(1) == std::vector<std::vector<std::uint32_t>>{{0, 0}, {0, 1}});
}

TEST_CASE("gcd of polynomials in t") {
  // (t+1)(t+2) and (t+1)t over F_3.
  TPoly a{3, {2, 0, 1}}, b{3, {0, 1, 1}};
  TPoly g = tpoly_gcd(a, b);
  CHECK(g.degree() == 1);
  CHECK(tpoly_mod(a, g).is_zero());
  CHECK(tpoly_mod(b, g).is_zero());
  CHECK(TPoly{2, {0, 0, 1}}.is_power_of_t());
  CHECK_FALSE(TPoly{2, {1, 1}}.is_power_of_t());
}
