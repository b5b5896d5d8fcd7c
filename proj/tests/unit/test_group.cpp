#include <doctest.h>

#include "gca/error.hpp"
#include "gca/group.hpp"
#include "groups.hpp"

using namespace gca;

TEST_CASE("cyclic group arithmetic matches modular arithmetic") {
  FiniteGroup z = FiniteGroup::cyclic(6);
  CHECK(z.order() == 6);
  for (Elem a = 0; a < 6; ++a) {
    CHECK(z.inv(a) == (6 - a) % 6);
    for (Elem b = 0; b < 6; ++b) CHECK(z.op(a, b) == (a + b) % 6);
    std::size_t ord = 1;
    while ((ord * a) % 6 != 0) ++ord;
    CHECK(z.element_order(a) == ord);
    CHECK(z.power(a, -7) == z.inv(z.power(a, 7)));
  }
}

TEST_CASE("permutation groups compose right to left") {
  FiniteGroup g = fixture::s3();
  CHECK(g.order() == 6);
  CHECK_FALSE(is_abelian(g));
  bool found = false;
  for (Elem a = 0; a < 6; ++a)
    for (Elem b = 0; b < 6; ++b) found = found || g.op(a, b) != g.op(b, a);
  CHECK(found);
  CHECK(fixture::a5().order() == 60);
}

TEST_CASE("table groups move the identity to index 0") {
  // Z/3Z written with the identity in the middle.
  FiniteGroup g = FiniteGroup::from_table({"a", "e", "b"}, {{2, 0, 1}, {0, 1, 2}, {1, 2, 0}});
  CHECK(g.element_name(0) == "e");
  for (Elem a = 0; a < 3; ++a) CHECK(g.op(0, a) == a);
  CHECK_THROWS_AS(FiniteGroup::from_table({"x", "y"}, {{0, 0}, {0, 1}}), Error);
}

TEST_CASE("product groups are mixed radix, first factor most significant") {
  FiniteGroup g = FiniteGroup::product({FiniteGroup::cyclic(2), FiniteGroup::cyclic(3)});
  CHECK(g.order() == 6);
  for (Elem x = 0; x < 6; ++x) {
    auto c = g.components(x);
    CHECK(c[0] * 3 + c[1] == x);
    CHECK(g.from_components(c) == x);
  }
  CHECK(g.op(g.from_components(std::vector<Elem>{1, 2}), g.from_components(std::vector<Elem>{1, 2})) ==
        g.from_components(std::vector<Elem>{0, 1}));
}

TEST_CASE("subgroups and normality agree with exhaustive search") {
  for (FiniteGroup g : {fixture::s3(), FiniteGroup::cyclic(4), FiniteGroup::cyclic(6),
                        FiniteGroup::product({FiniteGroup::cyclic(2), FiniteGroup::cyclic(2)})}) {
    auto brute = fixture::all_subgroups(g);
    auto subs = subgroups(g);
    CHECK(subs.size() == brute.size());
    for (const auto& h : subs) {
      std::set<Elem> s(h.elements().begin(), h.elements().end());
      CHECK(std::find(brute.begin(), brute.end(), s) != brute.end());
      bool normal = true;
      for (Elem x = 0; x < g.order(); ++x)
        for (Elem y : h.elements()) normal = normal && s.count(g.op(g.op(x, y), g.inv(x)));
      CHECK(is_normal(g, h) == normal);
    }
  }
}

TEST_CASE("endomorphism count agrees with exhaustive search") {
  for (FiniteGroup g : {fixture::s3(), FiniteGroup::cyclic(4), FiniteGroup::cyclic(6),
                        FiniteGroup::product({FiniteGroup::cyclic(2), FiniteGroup::cyclic(2)})}) {
    auto brute = fixture::all_homomorphisms(g);
    auto ends = endomorphisms(g);
    CHECK(ends.size() == brute.size());
    for (const auto& e : ends) CHECK(std::find(brute.begin(), brute.end(), e.images()) != brute.end());
  }
  CHECK(endomorphisms(fixture::s3()).size() == 10);
}

TEST_CASE("fully invariant subgroups are those fixed by every endomorphism") {
  for (FiniteGroup g : {fixture::s3(), FiniteGroup::cyclic(4),
                        FiniteGroup::product({FiniteGroup::cyclic(2), FiniteGroup::cyclic(2)})}) {
    auto homs = fixture::all_homomorphisms(g);
    std::size_t expected = 0;
    for (const auto& s : fixture::all_subgroups(g)) {
      bool inv = true;
      for (const auto& m : homs)
        for (Elem x : s) inv = inv && s.count(m[x]);
      expected += inv;
    }
    CHECK(fully_invariant_subgroups(g).size() == expected);
  }
  CHECK(is_invariantly_simple(FiniteGroup::product({FiniteGroup::cyclic(2), FiniteGroup::cyclic(2)})));
  CHECK_FALSE(is_invariantly_simple(FiniteGroup::cyclic(4)));
  CHECK_FALSE(is_invariantly_simple(fixture::s3()));
}

TEST_CASE("A5 is simple: every normal closure is trivial or everything") {
  FiniteGroup g = fixture::a5();
  for (Elem x = 1; x < g.order(); ++x) {
    std::vector<Elem> conj;
    for (Elem y = 0; y < g.order(); ++y) conj.push_back(g.op(g.op(y, x), g.inv(y)));
    CHECK(fixture::closure(g, conj).size() == 60);
  }
  CHECK(is_simple(g));
  CHECK_FALSE(is_simple(fixture::s3()));
}

TEST_CASE("elementary abelian detection") {
  CHECK(elementary_abelian_basis(FiniteGroup::product({FiniteGroup::cyclic(3), FiniteGroup::cyclic(3)})));
  CHECK(elementary_abelian_basis(FiniteGroup::cyclic(5)));
  CHECK_FALSE(elementary_abelian_basis(FiniteGroup::cyclic(4)));
  CHECK_FALSE(elementary_abelian_basis(fixture::s3()));
  CHECK(describe(FiniteGroup::cyclic(4)) == "Z/4Z");
}

TEST_CASE("quotients and homomorphism checks") {
  FiniteGroup z6 = FiniteGroup::cyclic(6);
  Subgroup h(z6, {0, 2, 4});
  QuotientGroup q = quotient(z6, h);
  CHECK(q.group.order() == 2);
  CHECK_THROWS_AS(quotient(fixture::s3(), Subgroup(fixture::s3(), {0, 1})), Error);
  CHECK_THROWS_AS(Endomorphism(z6, {0, 2, 4, 0, 2, 5}), Error);
  CHECK_THROWS_AS(Subgroup(z6, {0, 1}), Error);
  Endomorphism twice(z6, {0, 2, 4, 0, 2, 4});
  CHECK(endo_image(twice).order() == 3);
  CHECK(endo_kernel(twice).order() == 2);
  CHECK(twice.after(twice)(1) == 4);
}

TEST_CASE("centralizer matches brute force") {
  FiniteGroup g = fixture::s3();
  for (Elem s = 0; s < 6; ++s) {
    std::size_t n = 0;
    for (Elem x = 0; x < 6; ++x) n += g.op(x, s) == g.op(s, x);
    std::vector<Elem> one{s};
    CHECK(centralizer(g, one).order() == n);
  }
}
