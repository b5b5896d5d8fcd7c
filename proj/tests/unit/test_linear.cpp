#include <doctest.h>

#include "gca/debruijn.hpp"
#include "gca/error.hpp"
#include "gca/io.hpp"
#include "gca/linear.hpp"
#include "groups.hpp"
#include "oracles.hpp"

using namespace gca;

namespace {

LaurentMatrix mat(std::vector<std::vector<std::string>> rows, std::uint32_t p = 2) {
  return LaurentMatrix::parse(rows, p);
}

Gca gca_of(const LaurentMatrix& m) {
  std::vector<FiniteGroup> fs(m.dim(), FiniteGroup::cyclic(m.prime()));
  return to_gca(m.dim() == 1 ? fs[0] : FiniteGroup::product(fs), m);
}

}  // namespace

TEST_CASE("linearize inverts to_gca and the X convention reads c_{i+1}") {
  for (const auto& m : oracle::matrix_corpus(2, 2, 0, 1)) CHECK(linearize(gca_of(m)) == m);
  for (const auto& m : oracle::matrix_corpus(3, 1, -1, 1)) CHECK(linearize(gca_of(m)) == m);
  CHECK(gca_of(mat({{"X"}})).pure_shift_offset() == 1);
}

TEST_CASE("lin_apply agrees with the group rule") {
  std::mt19937 rng(21);
  for (const auto& m : {mat({{"0", "1"}, {"1", "X"}}), mat({{"X^-1 + 1", "X"}, {"0", "1"}})}) {
    Gca f = gca_of(m);
    for (int t = 0; t < 5; ++t) {
      VecConfig c;
      std::uniform_int_distribution<std::uint32_t> bit(0, 1);
      for (long long i = -3; i <= 3; ++i) c[i] = {bit(rng), bit(rng)};
      VecConfig img = lin_apply(m, c);
      std::map<long long, Elem> sup;
      for (auto& [i, v] : c) sup[i] = f.group().from_components(std::vector<Elem>(v.begin(), v.end()));
      Configuration y = apply(f, Configuration::finite(sup));
      for (long long i = -6; i <= 6; ++i) {
        auto it = img.find(i);
        std::vector<Elem> want = it == img.end() ? std::vector<Elem>{0, 0} : std::vector<Elem>(it->second.begin(), it->second.end());
        CHECK(f.group().components(y.at(i)) == want);
      }
    }
  }
}

TEST_CASE("injectivity and surjectivity follow the determinant") {
  for (const auto& m : oracle::matrix_corpus(2, 2, 0, 1)) {
    const auto d = det(m);
    CHECK((lin_is_injective(m).answer == Answer::Yes) == d.as_monomial().has_value());
    CHECK((lin_is_surjective(m).answer == Answer::Yes) == !d.is_zero());
  }
}

TEST_CASE("the inverse matrix multiplies to the identity") {
  for (const auto& m : oracle::matrix_corpus(2, 2, 0, 1)) {
    if (!det(m).as_monomial()) {
      CHECK_THROWS_AS(lin_invert(m), Error);
      continue;
    }
    CHECK(m * lin_invert(m) == LaurentMatrix::identity(2, 2));
  }
  CHECK(lin_invert(mat({{"0", "1"}, {"1", "X"}})).to_string() == "[[X, 1], [1, 0]]");
}

TEST_CASE("scalar positive expansivity needs terms on both sides") {
  // One-sided rules let a front sit still on one side; two-sided ones push
  // information out both ways.
  for (std::uint32_t p : {2u, 3u})
    for (const auto& m : oracle::matrix_corpus(p, 1, -2, 2)) {
      const LaurentPoly& f = m.at(0, 0);
      const bool two_sided = !f.is_zero() && f.min_degree() < 0 && f.max_degree() > 0;
      CHECK((scalar_pos_expansive(f).answer == Answer::Yes) == two_sided);
      CHECK((lin_pos_expansive(m).answer == Answer::Yes) == two_sided);
    }
}

TEST_CASE("trapped projections for the shifts") {
  // X moves a left front towards -inf: it never leaves (-inf, 0].
  CHECK_FALSE(trapped_projection(mat({{"X"}}), 5, Side::Left).empty());
  CHECK(trapped_projection(mat({{"X^-1"}}), 1, Side::Left).empty());
  CHECK(trapped_projection(mat({{"X"}}), 1, Side::Right).empty());
  CHECK_FALSE(trapped_projection(mat({{"X^-1"}}), 5, Side::Right).empty());
}

TEST_CASE("boxed orbit witness of the trapped example re-checks") {
  LaurentMatrix m = mat({{"X + X^-1", "0"}, {"0", "1"}});
  PosExpVerdict v = lin_pos_expansive(m);
  CHECK(v.answer == Answer::No);
  CHECK(v.witness_kind == "boxedOrbit");
  CHECK(recheck_witness(m, v.witness_kind, v.payload, 40, false));
  CHECK_FALSE(boxed_subspace(m, 2).empty());
}

TEST_CASE("finite kernel vectors map to zero") {
  LaurentMatrix m = mat({{"1", "X"}, {"1", "X"}});
  auto c = finite_kernel_vector(m, 4);
  REQUIRE(c);
  bool nonzero = false;
  for (auto& [i, v] : *c)
    for (auto x : v) nonzero = nonzero || x != 0;
  CHECK(nonzero);
  for (auto& [i, v] : lin_apply(m, *c))
    for (auto x : v) CHECK(x == 0);
  CHECK_FALSE(finite_kernel_vector(mat({{"1 + X"}}), 6));
}

TEST_CASE("expansivity through H and through direct windows") {
  CHECK(lin_is_expansive(mat({{"X"}})).answer == Answer::Yes);
  CHECK(lin_is_expansive(mat({{"1"}})).answer == Answer::No);
  CHECK(lin_is_expansive(mat({{"0", "1"}, {"1", "X"}})).answer == Answer::No);
  Verdict v = lin_is_expansive(mat({{"X + X^-1"}}));
  CHECK(v.answer == Answer::No);
  CHECK(v.reason == "NotInjective");
  for (const auto& m : oracle::matrix_corpus(3, 1, -2, 2)) {
    if (!det(m).as_monomial()) continue;
    CHECK(lin_is_expansive(m).answer == lin_expansive_direct(m).answer);
  }
}

TEST_CASE("transitivity of scalars matches the mixing search") {
  for (const auto& m : oracle::matrix_corpus(2, 1, -1, 1)) {
    const bool mixing = oracle::cylinder_mixing(gca_of(m), 2, 30, 2, 10);
    CHECK((lin_is_transitive(m).answer == Answer::Yes) == mixing);
  }
  Verdict v = lin_is_transitive(mat({{"0", "1"}, {"1", "X"}}));
  CHECK(v.answer == Answer::Yes);
  CHECK(v.evidence.at("gcd") == "1");
}

TEST_CASE("row reduction and null spaces over Z/pZ") {
  GfMatrix a{{1, 2, 0}, {2, 4, 0}, {0, 1, 1}};
  GfMatrix r = a;
  CHECK(gf_rref(r, 5) == 2);
  GfMatrix ns = gf_nullspace(a, 3, 5);
  REQUIRE(ns.size() == 1);
  for (const auto& row : a) {
    std::uint32_t s = 0;
    for (std::size_t j = 0; j < 3; ++j) s = (s + row[j] * ns[0][j]) % 5;
    CHECK(s == 0);
  }
}
