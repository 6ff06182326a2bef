#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_support.hpp"
#include "tilebound/error.hpp"
#include "tilebound/report.hpp"

using namespace tilebound;
using tbtest::load;
using tbtest::pair_path;

namespace {

std::string parse_error(const std::string& text) {
  try {
    parse_spec_text(text, "spec.json");
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

}  // namespace

TEST_CASE("spec parsing") {
  const auto spec = parse_spec_text(R"({"n":1,"matrix":[[3]],"digits":[[0],[4],[11]],"name":"x"})");
  CHECK(spec.n == 1);
  CHECK(spec.matrix == IntMatrix{{3}});
  CHECK(spec.digits == tbtest::vecs({{0}, {4}, {11}}));
  CHECK(spec.name == "x");
  CHECK(spec.warnings.empty());

  const auto big = parse_spec_text(R"({"n":1,"matrix":[["123456789012345678901234567890"]],"digits":[[0]]})");
  CHECK(big.matrix(0, 0) == Int("123456789012345678901234567890"));
}

TEST_CASE("parse errors carry context") {
  CHECK(contains(parse_error("{\n\"n\": 1,\n\"matrix\": [[2]\n}"), "spec.json:4"));
  CHECK(contains(parse_error("[1, 2]"), "top level"));
  CHECK(contains(parse_error(R"({"matrix":[[2]],"digits":[[0],[1]]})"), "missing field 'n'"));
  CHECK(contains(parse_error(R"({"n":0,"matrix":[],"digits":[[0]]})"), "'n'"));
  CHECK(contains(parse_error(R"({"n":2,"matrix":[[2,0]],"digits":[[0,0]]})"), "'matrix'"));
  CHECK(contains(parse_error(R"({"n":2,"matrix":[[2,0],[0]],"digits":[[0,0]]})"), "row 1"));
  CHECK(contains(parse_error(R"({"n":1,"matrix":[[2]],"digits":[[0],[1.5]]})"), "entry 1"));
  CHECK(contains(parse_error(R"({"n":1,"matrix":[[2]],"digits":[]})"), "'digits'"));
  CHECK(contains(parse_error(R"({"n":1,"matrix":[[2]],"digits":[[0]],"name":3})"), "'name'"));
  CHECK_THROWS_AS(read_spec(pair_path("does_not_exist")), ParseError);
}

TEST_CASE("duplicate digits are dropped with a warning") {
  const auto spec = parse_spec_text(R"({"n":1,"matrix":[[2]],"digits":[[0],[1],[0]]})");
  CHECK(spec.digits.size() == 2);
  REQUIRE(spec.warnings.size() == 1);
  CHECK(contains(spec.warnings[0], "duplicate"));
  CHECK_NOTHROW(make_pair(spec));
}

TEST_CASE("unknown fields warn") {
  const auto spec = parse_spec_text(R"({"n":1,"matrix":[[2]],"digits":[[0],[1]],"colour":"red"})");
  REQUIRE(spec.warnings.size() == 1);
  CHECK(contains(spec.warnings[0], "colour"));
}

TEST_CASE("invalid pairs fail validation, not parsing") {
  const auto spec = parse_spec_text(R"({"n":1,"matrix":[[2]],"digits":[[0],[2]]})");
  CHECK_THROWS_AS(make_pair(spec), ValidationError);
}

TEST_CASE("tagged rounding") {
  const Json t = tagged(1.0L / 3, kDimensionTol);
  CHECK(t["value"].get<double>() == 0.333333333333);
  CHECK(t["tol"].get<double>() == kDimensionTol);
  CHECK(dump(tagged(-0.0L, 0)) == dump(tagged(0, 0)));
  CHECK(tagged(1.58496250072115618L, 0)["value"].get<double>() == 1.58496250072);
}

TEST_CASE("integers beyond 64 bits are strings") {
  CHECK(int_json(Int(-5)) == Json(-5));
  CHECK(int_json(Int("100000000000000000000")) == Json("100000000000000000000"));
}

TEST_CASE("dump sorts keys and is byte stable") {
  Json j;
  j["zeta"] = 1;
  j["alpha"] = {{"b", 2}, {"a", 1}};
  const std::string s = dump(j);
  CHECK(s.find("alpha") < s.find("zeta"));
  CHECK(s.find("\"a\"") < s.find("\"b\""));
  CHECK(s.back() == '\n');

  for (const std::string name : {"ex2", "ex6iii", "ex7"}) {
    CAPTURE(name);
    const auto spec = read_spec(pair_path(name));
    const std::string a = dump(analysis_json(spec, analyze(make_pair(spec))));
    const std::string b = dump(analysis_json(spec, analyze(make_pair(spec))));
    CHECK(a == b);
  }
}

TEST_CASE("analysis report sections") {
  const auto spec = read_spec(pair_path("ex8"));
  const Json j = analysis_json(spec, analyze(make_pair(spec)));
  for (const char* key : {"validation", "primitivization", "contact", "spectrum", "dimension"}) {
    CAPTURE(key);
    CHECK(j.contains(key));
  }
  const Json no_dim = analysis_json(spec, analyze(make_pair(spec)), false);
  CHECK_FALSE(no_dim.contains("dimension"));
  CHECK_FALSE(to_text(j).empty());
}

TEST_CASE("dimension report is invariant under primitivization") {
  const auto twin = analyze(load("twin_0_3"));
  const auto prim = analyze(tbtest::pair1(2, {0, 1}));
  CHECK(twin.reduction.changed);
  CHECK(dump(dimension_json(twin.dimension)) == dump(dimension_json(prim.dimension)));
}

TEST_CASE("dimension report fields") {
  const Json d = dimension_json(analyze(load("ex2")).dimension);
  CHECK(d["status"] == "ok");
  CHECK(d["lower"]["tol"].get<double>() == kDimensionTol);
  CHECK(d["lambda_p"]["tol"].get<double>() == kEigenTol);
  const Json none = dimension_json(DimensionReport{});
  CHECK(none["available"] == false);
  CHECK(none["status"] == "no_special_eigenvalue");
  // the interval tile still has lambda_p = 1 and dimension 0
  const Json one = dimension_json(analyze(tbtest::pair1(2, {0, 1})).dimension);
  CHECK(one["exact"]["value"].get<double>() == 0);
}
