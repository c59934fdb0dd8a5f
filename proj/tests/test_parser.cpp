#include <catch_amalgamated.hpp>

#include <ltlfo/parser.hpp>

using namespace ltlfo;

namespace {

Formula eqc(const char* a, const char* b) { return Formula::equal(Term::constant(a), Term::constant(b)); }

} // namespace

TEST_CASE("parse builds the expected tree") {
  const Formula f = parse(R"(exists x in "/m/a" : x = "v")");
  CHECK(f == Formula::exists("x", Path::parse("/m/a"), Formula::equal(Term::variable("x"), Term::constant("v"))));

  CHECK(parse("true") == Formula::truth());
  CHECK(parse("false") == Formula::falsity());
  CHECK(to_nnf(parse("true")) == eqc("true", "true"));
  CHECK(parse(R"("a" != "b")") == Formula::not_equal(Term::constant("a"), Term::constant("b")));
}

TEST_CASE("parse reports well-formedness errors") {
  CHECK_THROWS_AS(parse(R"(x = "v")"), unbound_variable);
  CHECK_THROWS_AS(parse(R"(exists x in "/m/a" : exists x in "/m/b" : x = "v")"), shadowed_variable);
  // the quantifier body is a unary formula, so the second x is out of scope
  CHECK_THROWS_AS(parse(R"(exists x in "/m/a" : x = "v" & x = "w")"), unbound_variable);
  CHECK_NOTHROW(parse(R"(exists x in "/m/a" : (x = "v" & x != "w"))"));
}

TEST_CASE("parse reports syntax errors with a position") {
  try {
    parse(R"("a" = )");
    FAIL("expected a syntax error");
  } catch (const syntax_error& e) {
    CHECK(e.position() == 6);
  }
  CHECK_THROWS_AS(parse(R"(("a" = "b")"), syntax_error);
  CHECK_THROWS_AS(parse(R"("a" = "b" "c")"), syntax_error);
  CHECK_THROWS_AS(parse(R"(exists x in "m/a" : x = "v")"), syntax_error);
  CHECK_THROWS_AS(parse(R"(exists G in "/m/a" : "a" = "a")"), syntax_error);
  CHECK_THROWS_AS(parse(R"("unterminated)"), syntax_error);
  CHECK_THROWS_AS(parse(R"("a" = "b" $)"), syntax_error);
  CHECK_THROWS_AS(parse(""), syntax_error);
}

TEST_CASE("precedence: unary > U/R > & > | > ->") {
  const Formula a = eqc("a", "a"), b = eqc("b", "b"), c = eqc("c", "c"), d = eqc("d", "d");
  const char* A = R"("a" = "a")";
  const char* B = R"("b" = "b")";
  const char* C = R"("c" = "c")";
  auto s = [](std::initializer_list<const char*> parts) {
    std::string out;
    for (auto* p : parts)
      out += p;
    return out;
  };

  CHECK(parse(s({A, " | ", B, " & ", C})) == Formula::disjunction(a, Formula::conjunction(b, c)));
  CHECK(parse(s({A, " & ", B, " U ", C})) == Formula::conjunction(a, Formula::until(b, c)));
  CHECK(parse(s({A, " U ", B, " U ", C})) == Formula::until(a, Formula::until(b, c)));
  CHECK(parse(s({A, " R ", B, " U ", C})) == Formula::release(a, Formula::until(b, c)));
  CHECK(parse(s({A, " -> ", B, " -> ", C})) == Formula::implication(a, Formula::implication(b, c)));
  CHECK(parse(s({A, " | ", B, " -> ", C})) == Formula::implication(Formula::disjunction(a, b), c));
  CHECK(parse(s({"G ", A, " U ", B})) == Formula::until(Formula::globally(a), b));
  CHECK(parse(s({"! ", A, " & ", B})) == Formula::conjunction(Formula::negation(a), b));
  CHECK(parse(s({"X F G ", A})) == Formula::next(Formula::finally(Formula::globally(a))));
  CHECK(parse(s({A, " & ", B, " & ", C})) == Formula::conjunction(Formula::conjunction(a, b), c));
  (void)d;
}

TEST_CASE("string escapes and comments") {
  const Formula f = parse("# leading comment\n\"q\\\"uote\" = \"back\\\\slash\" # trailing\n");
  CHECK(f.lhs().text == "q\"uote");
  CHECK(f.rhs().text == "back\\slash");
  CHECK(parse(to_string(f)) == f);
}

TEST_CASE("stock example formula parses") {
  const Formula f = parse(R"(G (exists s in "/message/stock/name" : s = "stock-2" -> F exists t in "/message/action" : t = "confirm"))");
  CHECK(f.op() == Op::globally);
  CHECK(temporal_depth(f) == 2);
}
