#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "majent/text_io.hpp"
#include "test_util.hpp"

using namespace majent;
using majent::testing::random_element;

TEST_CASE("element formatting") {
  CliffordElement e(2);
  e.add_term(0, Complex(3, 0));
  e.add_term(0b11, Complex(0, 1));
  CHECK(format_element(e) == "(3,0) 1 + (0,1) c1c2");
  CHECK(format_element(CliffordElement::zero(2)) == "(0,0) 1");
}

TEST_CASE("element parsing") {
  const auto e = parse_element("(3,0) 1 + (0,1) c1c2", 2);
  CHECK(e.coefficient(0) == Complex(3, 0));
  CHECK(e.coefficient(0b11) == Complex(0, 1));

  // bare monomial and bare coefficient
  CHECK(parse_element("c1c3", 3).coefficient(0b101) == Complex(1, 0));
  CHECK(parse_element("(0,-0.5)", 2).coefficient(0) == Complex(0, -0.5));
  // repeated masks accumulate
  CHECK(parse_element("c1 + c1", 2).coefficient(0b01) == Complex(2, 0));

  CHECK_THROWS_AS(parse_element("c5", 3), std::invalid_argument);
  CHECK_THROWS_AS(parse_element("c1c1", 3), std::invalid_argument);
  CHECK_THROWS_AS(parse_element("", 3), std::invalid_argument);
  CHECK_THROWS_AS(parse_element("(1,2", 3), std::invalid_argument);
}

TEST_CASE("format/parse round trip") {
  std::mt19937 rng(89);
  for (int trial = 0; trial < 20; ++trial) {
    const auto e = random_element(rng, 5, 6);
    const auto back = parse_element(format_element(e), 5);
    CHECK((e - back).max_abs_coeff() < 1e-11);
  }
}

TEST_CASE("json writer") {
  JsonWriter w;
  w.begin_object();
  w.key("name").value("check");
  w.key("count").value(3);
  w.key("residual").value(0.125);
  w.key("flag").value(true);
  w.key("missing").null_value();
  w.key("items").begin_array().value(1).value(2).end_array();
  w.end_object();
  CHECK(w.str() ==
        "{\"name\":\"check\",\"count\":3,\"residual\":0.125,\"flag\":true,"
        "\"missing\":null,\"items\":[1,2]}");
}

TEST_CASE("float formatting is fixed at 12 significant digits") {
  CHECK(fmt_double(1.0 / 3.0) == "0.333333333333");
  CHECK(fmt_double(58.0) == "58");
  CHECK(fmt_complex(Complex(0, -1)) == "(0,-1)");
}
