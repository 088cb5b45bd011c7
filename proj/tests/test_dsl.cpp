#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "mapspace/dsl.hpp"
#include "mapspace/sullivan.hpp"

using namespace mapspace;

namespace {

TableAlgebra torus2_table() {
  TableAlgebra t;
  t.basis = {{"1", 0}, {"e1", 1}, {"e2", 1}, {"e12", 2}};
  t.unit = 0;
  const std::size_t n = 4;
  t.products.assign(n * n, {});
  for (std::size_t i = 0; i < n; ++i) {
    t.products[0 * n + i] = {{i, 1}};
    if (i != 0) t.products[i * n + 0] = {{i, 1}};
  }
  t.products[1 * n + 2] = {{3, 1}};
  t.products[2 * n + 1] = {{3, -1}};
  return t;
}

AlgebraPresentation flag_ring() {
  FreeAlgebra alg({{"t1", 2, {}}, {"t2", 2, {}}});
  const Polynomial t1 = Polynomial::monomial(Monomial({{0, 1}}));
  const Polynomial t2 = Polynomial::monomial(Monomial({{1, 1}}));
  Polynomial r1 = multiply(t1, t1, alg);
  r1 += multiply(t1, t2, alg);
  r1 += multiply(t2, t2, alg);
  Polynomial r2 = multiply(multiply(t1, t1, alg), t2, alg);
  r2 += multiply(t1, multiply(t2, t2, alg), alg);
  AlgebraPresentation p;
  p.generators = alg;
  p.relations = {r1, r2};
  p.declared_top = 6;
  p.declared_rho = {{2, 2}, {3, 1}, {5, 1}};
  return p;
}

ParseError capture(const std::string& text) {
  try {
    parse_document(text);
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("expected a parse error");
  return ParseError(0, 0, "unreachable");
}

}  // namespace

TEST_CASE("model blocks match programmatic construction") {
  const Document doc = parse_document(
      "model S2 {\n"
      "  gen a : 2;\n"
      "  gen b : 3;\n"
      "  d b = a^2;\n"
      "}\n");
  REQUIRE(doc.models.size() == 1);
  CHECK(doc.models[0].name == "S2");
  CHECK(doc.models[0].minimal_required);
  CHECK(doc.models[0].model == sphere_model(2));
}

TEST_CASE("omitted differentials default to zero") {
  const Document doc = parse_document(
      "model H3 {\n"
      "  gen x : 1;\n"
      "  gen y : 1;\n"
      "  gen z : 1;\n"
      "  d z = x*y;\n"
      "}\n");
  const DGModel& m = doc.models[0].model;
  CHECK(m.differential(0).is_zero());
  CHECK(m.differential(1).is_zero());
  CHECK_FALSE(m.differential(2).is_zero());
}

TEST_CASE("signs and rational coefficients in differentials") {
  const Document doc = parse_document(
      "model R {\n"
      "  gen x : 1;\n"
      "  gen y : 1;\n"
      "  gen u : 1;\n"
      "  d u = -x*y + 1/2*y*x;\n"
      "}\n");
  const FreeAlgebra& alg = doc.models[0].model.algebra();
  const Polynomial x = Polynomial::monomial(Monomial({{0, 1}}));
  const Polynomial y = Polynomial::monomial(Monomial({{1, 1}}));
  const Polynomial expected = multiply(x, y, alg).scaled(Rational(-3) / 2);
  CHECK(doc.models[0].model.differential(2) == expected);
}

TEST_CASE("cdga blocks load without minimality") {
  const Document doc = parse_document(
      "cdga E {\n"
      "  gen a : 2;\n"
      "  gen b : 1;\n"
      "  d b = a;\n"
      "}\n");
  CHECK_FALSE(doc.models[0].minimal_required);
  CHECK_FALSE(validate_minimal(doc.models[0].model).is_minimal());
}

TEST_CASE("table blocks fill in commutativity") {
  const Document doc = parse_document(
      "table T2H {\n"
      "  basis 1 : 0;\n"
      "  basis e1 : 1;\n"
      "  basis e2 : 1;\n"
      "  basis e12 : 2;\n"
      "  mul e1*e2 = e12;\n"
      "}\n");
  REQUIRE(doc.tables.size() == 1);
  CHECK(doc.tables[0].table == torus2_table());
  CHECK(doc.tables[0].table.consistency_issues().empty());
}

TEST_CASE("explicit transposed products must agree") {
  const std::string head =
      "table T {\n"
      "  basis 1 : 0;\n"
      "  basis e1 : 1;\n"
      "  basis e2 : 1;\n"
      "  basis e12 : 2;\n"
      "  mul e1*e2 = e12;\n";
  CHECK_NOTHROW(parse_document(head + "  mul e2*e1 = -e12;\n}\n"));
  CHECK_THROWS_AS(parse_document(head + "  mul e2*e1 = e12;\n}\n"), ParseError);
}

TEST_CASE("table shape errors") {
  CHECK_THROWS_AS(parse_document("table T {\n  basis a : 1;\n}\n"), ParseError);
  CHECK_THROWS_AS(
      parse_document("table T {\n  basis 1 : 0;\n  basis u : 0;\n}\n"), ParseError);
  CHECK_THROWS_AS(parse_document("table T {\n"
                                 "  basis 1 : 0;\n"
                                 "  basis s : 2;\n"
                                 "  mul s*s = 0;\n"
                                 "  basis w : 4;\n"
                                 "}\n"),
                  ParseError);
  // products cannot be used on the right before the table is complete
  CHECK_THROWS_AS(parse_document("table T {\n"
                                 "  basis 1 : 0;\n"
                                 "  basis s : 2;\n"
                                 "  basis w : 4;\n"
                                 "  mul s*s = s*w;\n"
                                 "}\n"),
                  ParseError);
  // product value must sit in the product degree
  CHECK_THROWS_AS(parse_document("table T {\n"
                                 "  basis 1 : 0;\n"
                                 "  basis s : 2;\n"
                                 "  basis w : 4;\n"
                                 "  mul s*s = s;\n"
                                 "}\n"),
                  ParseError);
}

TEST_CASE("ring blocks carry relations and declared ranks") {
  const Document doc = parse_document(
      "ring FlagR {\n"
      "  gen t1 : 2;\n"
      "  gen t2 : 2;\n"
      "  rel t1^2 + t1*t2 + t2^2;\n"
      "  rel t1^2*t2 + t1*t2^2;\n"
      "  top = 6;\n"
      "  rho 2 = 2;\n"
      "  rho 3 = 1;\n"
      "  rho 5 = 1;\n"
      "}\n");
  REQUIRE(doc.rings.size() == 1);
  CHECK(doc.rings[0].ring == flag_ring());
  CHECK(presentation_table(doc.rings[0].ring).betti(6) ==
        std::vector<std::size_t>{1, 0, 2, 0, 2, 0, 1});
}

TEST_CASE("map blocks resolve either kind of target") {
  const Document doc = parse_document(
      "model H3 {\n"
      "  gen x : 1;\n  gen y : 1;\n  gen z : 1;\n"
      "  d z = x*y;\n"
      "}\n"
      "table S1H {\n"
      "  basis 1 : 0;\n"
      "  basis t : 1;\n"
      "}\n"
      "map fx : H3 -> S1H {\n"
      "  x |-> t;\n"
      "}\n"
      "map dbl : H3 -> H3 {\n"
      "  x |-> 2*x;\n"
      "  y |-> y;\n"
      "  z |-> 2*z;\n"
      "}\n");
  REQUIRE(doc.maps.size() == 2);
  const MapBlock& fx = doc.maps[0];
  CHECK(fx.source == "H3");
  CHECK(fx.target == "S1H");
  CHECK(std::get<TableVec>(fx.values[0]) == TableVec{0, 1});
  CHECK(std::get<TableVec>(fx.values[1]) == TableVec{0, 0});
  CHECK(std::get<TableVec>(fx.values[2]) == TableVec{0, 0});
  const Polynomial x = Polynomial::monomial(Monomial({{0, 1}}));
  CHECK(std::get<Polynomial>(doc.maps[1].values[0]) == x.scaled(2));
}

TEST_CASE("map value degrees are checked at parse time") {
  const std::string head =
      "model S2 {\n  gen a : 2;\n  gen b : 3;\n  d b = a^2;\n}\n"
      "table S1H {\n  basis 1 : 0;\n  basis t : 1;\n}\n";
  CHECK_THROWS_AS(parse_document(head + "map f : S2 -> S1H {\n  a |-> t;\n}\n"),
                  ParseError);
  CHECK_THROWS_AS(parse_document(head + "map f : S2 -> S2 {\n  a |-> b;\n}\n"),
                  ParseError);
  CHECK_THROWS_AS(parse_document(head + "map f : S2 -> S2 {\n  c |-> a;\n}\n"),
                  ParseError);
  CHECK_THROWS_AS(
      parse_document(head + "map f : S2 -> S2 {\n  a |-> a;\n  a |-> 2*a;\n}\n"),
      ParseError);
  CHECK_NOTHROW(parse_document(head + "map f : S2 -> S2 {\n  a |-> 0;\n}\n"));
}

TEST_CASE("problem blocks wire spaces and maps together") {
  const std::string head =
      "model S2 {\n  gen a : 2;\n  gen b : 3;\n  d b = a^2;\n}\n"
      "model H3 {\n  gen x : 1;\n  gen y : 1;\n  gen z : 1;\n  d z = x*y;\n}\n"
      "table S1H {\n  basis 1 : 0;\n  basis t : 1;\n}\n"
      "map fx : H3 -> S1H {\n  x |-> t;\n}\n";
  const Document doc = parse_document(
      head +
      "problem along_x {\n  X = S1H;\n  Y = H3;\n  f = fx;\n}\n"
      "problem null_pair {\n  X = S1H;\n  Y = S2;\n  dim = 1;\n}\n");
  REQUIRE(doc.problems.size() == 2);
  CHECK(doc.problems[0].f == "fx");
  CHECK_FALSE(doc.problems[0].dim.has_value());
  CHECK(doc.problems[1].f.empty());
  CHECK(doc.problems[1].dim == 1);

  // f must run from Y to X
  CHECK_THROWS_AS(
      parse_document(head + "problem bad {\n  X = S1H;\n  Y = S2;\n  f = fx;\n}\n"),
      ParseError);
  CHECK_THROWS_AS(parse_document(head + "problem bad {\n  Y = H3;\n}\n"), ParseError);
  CHECK_THROWS_AS(
      parse_document(head + "problem bad {\n  X = nowhere;\n  Y = H3;\n}\n"),
      ParseError);
}

TEST_CASE("loop blocks name a model and a one cell") {
  const std::string head =
      "model H3 {\n  gen x : 1;\n  gen y : 1;\n  gen z : 1;\n  d z = x*y;\n}\n";
  const Document doc = parse_document(
      head +
      "loop around_x {\n  Y = H3;\n  alpha = x;\n}\n"
      "loop based {\n  Y = H3;\n  alpha = zero;\n}\n");
  CHECK(doc.loops[0].alpha == "x");
  CHECK(doc.loops[1].alpha.empty());
  CHECK_THROWS_AS(
      parse_document(head + "loop bad {\n  Y = H3;\n  alpha = w;\n}\n"), ParseError);
  CHECK_THROWS_AS(parse_document(head + "loop bad {\n  alpha = x;\n}\n"), ParseError);
}

TEST_CASE("parse errors carry a position") {
  const ParseError missing_colon = capture(
      "model M {\n"
      "  gen a : 2;\n"
      "  gen b 3;\n"
      "}\n");
  CHECK(missing_colon.line == 3);
  CHECK(missing_colon.col == 9);

  const ParseError unknown_gen = capture(
      "model M {\n"
      "  gen a : 2;\n"
      "  d c = a;\n"
      "}\n");
  CHECK(unknown_gen.line == 3);
  CHECK(unknown_gen.col == 5);
  CHECK(std::string(unknown_gen.what()).find("unknown generator 'c'") !=
        std::string::npos);

  const ParseError bad_degree = capture(
      "model M {\n"
      "  gen a : 2;\n"
      "  gen b : 4;\n"
      "  d b = a;\n"
      "}\n");
  CHECK(bad_degree.line == 4);
  CHECK(bad_degree.col == 9);
  CHECK(std::string(bad_degree.what()).find("degree 5") != std::string::npos);

  const ParseError stray = capture("model M {\n  gen a : 2;\n}\n?\n");
  CHECK(stray.line == 4);
  CHECK(stray.col == 1);
}

TEST_CASE("more rejected inputs") {
  CHECK_THROWS_AS(parse_document("model M {\n  gen a : 0;\n}\n"), ParseError);
  CHECK_THROWS_AS(parse_document("model M {\n  gen a : 2;\n  gen a : 2;\n}\n"),
                  ParseError);
  CHECK_THROWS_AS(
      parse_document("model M {\n  gen a : 2;\n  gen b : 3;\n  d b = a^2;\n  d b = 0;\n}\n"),
      ParseError);
  CHECK_THROWS_AS(
      parse_document("model M {\n  gen a : 2;\n  gen b : 3;\n  d b = a + a^2;\n}\n"),
      ParseError);
  CHECK_THROWS_AS(parse_document("widget W {\n}\n"), ParseError);
  CHECK_THROWS_AS(parse_document("model M {\n  gen a : 2;\n"), ParseError);
  // one global namespace for all block kinds
  CHECK_THROWS_AS(parse_document("model M {\n  gen a : 2;\n}\n"
                                 "table M {\n  basis 1 : 0;\n}\n"),
                  ParseError);
}

TEST_CASE("documents survive a print and reparse") {
  const Document doc = parse_document(
      "# shared corpus for the round trip check\n"
      "model S2 {\n  gen a : 2;\n  gen b : 3;\n  d b = a^2;\n}\n"
      "model H3 {\n  gen x : 1;\n  gen y : 1;\n  gen z : 1;\n  d z = x*y;\n}\n"
      "cdga S2big {\n"
      "  gen a : 2;\n  gen b : 3;\n  gen u : 3;\n  gen w : 4;\n"
      "  d b = a^2;\n  d u = w;\n"
      "}\n"
      "table T2H {\n"
      "  basis 1 : 0;\n  basis e1 : 1;\n  basis e2 : 1;\n  basis e12 : 2;\n"
      "  mul e1*e2 = e12;\n"
      "}\n"
      "ring FlagR {\n"
      "  gen t1 : 2;\n  gen t2 : 2;\n"
      "  rel t1^2 + t1*t2 + t2^2;\n  rel t1^2*t2 + t1*t2^2;\n"
      "  top = 6;\n  rho 2 = 2;\n  rho 3 = 1;\n  rho 5 = 1;\n"
      "}\n"
      "map fx : H3 -> T2H {\n  x |-> e1;\n  y |-> e2;\n}\n"
      "map half : S2 -> S2 {\n  a |-> 1/2*a;\n  b |-> 1/4*b;\n}\n"
      "problem p1 {\n  X = T2H;\n  Y = H3;\n  f = fx;\n}\n"
      "problem p2 {\n  X = S2;\n  Y = S2;\n  f = half;\n  dim = 2;\n}\n"
      "loop l1 {\n  Y = H3;\n  alpha = x;\n}\n"
      "loop l2 {\n  Y = S2;\n  alpha = zero;\n}\n");
  const std::string printed = print_document(doc);
  const Document again = parse_document(printed);
  CHECK(again == doc);
  CHECK(print_document(again) == printed);
}

TEST_CASE("later sources see earlier blocks") {
  Document doc = parse_document("model S2 {\n  gen a : 2;\n  gen b : 3;\n  d b = a^2;\n}\n");
  parse_into(doc, "map dbl : S2 -> S2 {\n  a |-> 2*a;\n  b |-> 4*b;\n}\n");
  parse_into(doc, "problem self {\n  X = S2;\n  Y = S2;\n  f = dbl;\n}\n");
  CHECK(doc.maps.size() == 1);
  CHECK(doc.problems.size() == 1);
  CHECK_THROWS_AS(parse_into(doc, "model S2 {\n  gen a : 2;\n}\n"), ParseError);
}
