#include <doctest.h>

#include "gca/error.hpp"
#include "gca/io.hpp"
#include "gca/limits.hpp"
#include "groups.hpp"

using namespace gca;
using nlohmann::json;

namespace {

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("groups round trip through JSON") {
  for (FiniteGroup g : {FiniteGroup::cyclic(5), fixture::s3(),
                        FiniteGroup::product({FiniteGroup::cyclic(2), FiniteGroup::cyclic(3)})}) {
    FiniteGroup back = group_from_json(group_to_json(g));
    REQUIRE(back.order() == g.order());
    for (Elem a = 0; a < g.order(); ++a)
      for (Elem b = 0; b < g.order(); ++b) CHECK(back.op(a, b) == g.op(a, b));
  }
}

TEST_CASE("rules round trip through JSON") {
  std::mt19937 rng(23);
  Gca s3 = Gca::shift(fixture::s3(), -1);
  Gca lin = rule_from_json(json::parse(R"({"prime":3,"laurent":[["1","2X"],["X^-1","0"]]})"));
  for (const Gca& f : {s3, lin}) {
    Gca back = rule_from_json(rule_to_json(f));
    CHECK(back == f);
    Configuration x = fixture::random_ep(rng, f.group().order());
    CHECK(apply(back, x) == apply(f, x));
  }
}

TEST_CASE("endomorphism shorthands and missing offsets") {
  Gca f = rule_from_json(json::parse(R"({"group":{"kind":"cyclic","order":4},"radius":1,
      "endomorphisms":{"0":{"images":[0,2,0,2]},"1":"identity","-1":"trivial"}})"));
  CHECK(f.radius() == 1);
  CHECK(f.endo(1).is_identity());
  CHECK(f.endo(-1).is_trivial());
  CHECK(f.endo(0)(1) == 2);
}

TEST_CASE("configurations round trip through JSON") {
  std::mt19937 rng(29);
  FiniteGroup g = FiniteGroup::cyclic(3);
  for (int t = 0; t < 20; ++t) {
    Configuration c = fixture::random_ep(rng, 3);
    CHECK(config_from_json(g, config_to_json(c)) == c);
  }
  Configuration f = config_from_json(g, json::parse(R"({"kind":"finite","support":{"-1":2,"4":1}})"));
  CHECK(f.at(-1) == 2);
  CHECK(f.at(4) == 1);
  CHECK(config_to_json(f).at("kind") == "finite");
}

TEST_CASE("malformed input is reported with a kind") {
  CHECK(kind_of([] { group_from_json({{"kind", "nope"}}); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { group_from_json(json::parse(R"({"kind":"table","elements":["a","b"],"table":[[0,0],[0,1]]})")); }) ==
        ErrorKind::NotAGroup);
  CHECK(kind_of([] { read_json_file("/nonexistent/rule.json"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] {
          rule_from_json(json::parse(R"({"group":{"kind":"cyclic","order":4},"radius":0,
              "endomorphisms":{"0":{"images":[0,2,1,2]}}})"));
        }) == ErrorKind::InvalidArgument);
}

TEST_CASE("size limits parse from key=value lists") {
  Limits l = parse_limits("max_order=5000, germ_count=100");
  CHECK(l.max_order == 5000);
  CHECK(l.germ_count == 100);
  CHECK(l.debruijn_vertices == Limits{}.debruijn_vertices);
  CHECK(kind_of([] { parse_limits("bogus=1"); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { parse_limits("max_order=abc"); }) == ErrorKind::InvalidArgument);
}
