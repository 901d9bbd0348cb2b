#include <doctest.h>

#include "explab/error.hpp"
#include "explab/json_io.hpp"
#include "explab/parser.hpp"
#include "support/generators.hpp"

using namespace explab;

namespace {

struct Position {
  std::size_t line, column;
};

Position error_at(std::string_view text, int n = 1) {
  try {
    parse_weyl(text, n);
  } catch (const ParseError& e) {
    return {e.line(), e.column()};
  }
  return {0, 0};
}

}  // namespace

TEST_CASE("parsing examples") {
  CHECK(parse_weyl("d - 1", 1).to_string() == "d - 1");
  CHECK(parse_weyl("d1*x1", 2).to_string() == "x1*d1 + 1");
  CHECK(parse_weyl("x^2*d^2 + 4*x*d + 2", 1).to_string() == "x^2*d^2 + 4*x*d + 2");
  CHECK(parse_weyl("t*d - 1/2", 1) == parse_weyl("x*d - 1/2", 1));
  CHECK(parse_weyl("-(d + 1)^2", 1).to_string() == "-d^2 - 2*d - 1");
  CHECK(parse_weyl("  3/6 * x\n + 0", 1).to_string() == "1/2*x");
  CHECK(parse_weyl("(x - 1)*(x + 1)", 1).to_string() == "x^2 - 1");
  CHECK(parse_weyl("d^0", 1).to_string() == "1");
  const auto list = parse_weyl_list("x1 - d2; d1 - x2;", 2);
  REQUIRE(list.size() == 2);
  CHECK(list[1].to_string() == "-x2 + d1");
}

TEST_CASE("parse errors carry positions") {
  CHECK_THROWS_AS(parse_weyl("d +* 1", 1), ParseError);
  CHECK_THROWS_WITH(parse_weyl("d +* 1", 1), "unexpected '*' at line 1, column 4");
  CHECK(error_at("x +\n  * d").line == 2);
  CHECK(error_at("x +\n  * d").column == 3);
  CHECK_THROWS_WITH(parse_weyl("x3", 2), "unknown variable 'x3' at line 1, column 1");
  CHECK(parse_weyl("x1", 1) == parse_weyl("x", 1));
  CHECK_THROWS_AS(parse_weyl("x2", 1), ParseError);
  CHECK_THROWS_AS(parse_weyl("x", 2), ParseError);
  CHECK_THROWS_AS(parse_weyl("t", 2), ParseError);
  CHECK_THROWS_AS(parse_weyl("(x + 1", 1), ParseError);
  CHECK_THROWS_AS(parse_weyl("x^", 1), ParseError);
  CHECK_THROWS_AS(parse_weyl("1/0", 1), ParseError);
  CHECK_THROWS_AS(parse_weyl("", 1), ParseError);
  CHECK_THROWS_AS(parse_weyl("x^99999999999", 1), ParseError);
  CHECK_THROWS_AS(parse_weyl("y", 1), ParseError);
  CHECK_THROWS_AS(parse_weyl("d; x", 1), ParseError);
  CHECK_THROWS_AS(parse_weyl_list("d; x +", 1), ParseError);
}

TEST_CASE("print-parse round trip") {
  std::mt19937_64 rng(51);
  for (int i = 0; i < 200; ++i) {
    const int n = 1 + i % 2;
    const WeylElt a = gen::weyl(rng, n, 3, 5);
    const std::string s = a.to_string();
    const WeylElt b = parse_weyl(s, n);
    CHECK(b == a);
    CHECK(b.to_string() == s);
  }
}

TEST_CASE("json round trips") {
  std::mt19937_64 rng(52);
  for (int p : {3, 5, 7}) {
    const Cyclo c = gen::cyclo(rng, p);
    const json j = to_json(c);
    CHECK(j["prime"] == p);
    CHECK(j["coeffs"].size() == static_cast<std::size_t>(p - 1));
    CHECK(cyclo_from_json(j) == c);
    CHECK(cyclo_from_json(json::parse(j.dump())) == c);

    const ExpObject h = gen::exp_class(rng, 2, p).rep();
    CHECK(exp_object_from_json(json::parse(to_json(h).dump())) == h);
  }
  const json half = to_json(embed_rational(Rational(-3, 2), 3));
  CHECK(half.dump() == R"({"prime":3,"coeffs":["-3/2","0"]})");
  CHECK(cyclo_from_json(json::parse(R"({"prime":5,"coeffs":[1,"2/4","0","-1"]})")) ==
        Cyclo::from_coeffs(5, {1, Rational(1, 2), 0, -1}));
  CHECK_THROWS_AS(cyclo_from_json(json::parse(R"({"prime":5,"coeffs":["1"]})")), Error);
  CHECK_THROWS_AS(cyclo_from_json(json::parse(R"({"prime":5,"coeffs":["1/0","0","0","0"]})")), Error);

  const CyclicModule m = CyclicModule::from_generators({parse_weyl("x1 - d2", 2), parse_weyl("d1 - x2", 2)});
  const json mj = to_json(m);
  CHECK(mj["n"] == 2);
  CHECK(module_from_json(json::parse(mj.dump())) == m);
  CHECK(module_from_json(json::parse(R"({"n":1,"generators":["d - 1"]})")) == make_L(1));

  const json cj = to_json(point_complex(make_O(), 0));
  CHECK(cj["ker"] == 0);
  CHECK(cj["coker"] == 1);
  CHECK(cj["degrees"] == json::array({-1, 0}));
  CHECK(cj["certificate"] == "exact-triangular");
  CHECK(to_json(make_L(2).ideal()) == json::array({"d - 2"}));
}
