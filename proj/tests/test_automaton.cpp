#include <catch_amalgamated.hpp>

#include <map>

#include <ltlfo/automaton.hpp>
#include <ltlfo/fuzz.hpp>
#include <ltlfo/parser.hpp>

using namespace ltlfo;

namespace {

const char* stock_message =
    R"({"message":{"action":"placeBuyOrder","stock":[{"name":"stock-1","amount":"123"},{"name":"stock-2","amount":"456"}]}})";

Formula eqc(const char* a, const char* b) { return Formula::equal(Term::constant(a), Term::constant(b)); }

Automaton compile(const char* text) { return Automaton(to_nnf(parse(text))); }

std::set<StateRef> refs(const Automaton& a, std::initializer_list<Formula> fs) {
  std::set<StateRef> out{StateRef::top()};
  for (const auto& f : fs)
    out.insert(*a.find(f));
  return out;
}

// Truth of a positive expression when exactly the obligations in `held` are satisfied.
bool holds(const PositiveExpr& e, const std::set<Obligation>& held) {
  switch (e.kind) {
  case PositiveExpr::Kind::atom:
    if (e.atom.state.is_top())
      return true;
    if (e.atom.state.is_bottom())
      return false;
    return held.count(e.atom) > 0;
  case PositiveExpr::Kind::all:
    return std::all_of(e.operands.begin(), e.operands.end(), [&](const auto& o) { return holds(o, held); });
  case PositiveExpr::Kind::any:
    return std::any_of(e.operands.begin(), e.operands.end(), [&](const auto& o) { return holds(o, held); });
  }
  return false;
}

void atoms(const PositiveExpr& e, std::set<Obligation>& out) {
  if (e.kind == PositiveExpr::Kind::atom) {
    if (!e.atom.state.is_pit())
      out.insert(e.atom);
    return;
  }
  for (const auto& o : e.operands)
    atoms(o, out);
}

} // namespace

TEST_CASE("state table holds the closure plus the two pits") {
  const Automaton atomic(eqc("a", "b"));
  CHECK(atomic.size() == 3);
  CHECK(atomic.accepting() == std::set<StateRef>{StateRef::top()});

  const Formula mu = eqc("a", "b"), eta = eqc("c", "d");
  const Automaton until(Formula::until(mu, eta));
  CHECK(until.size() == 5);
  CHECK(until.accepting() == std::set<StateRef>{StateRef::top()});
  CHECK(until.formula(until.initial()) == Formula::until(mu, eta));
  CHECK(until.label(StateRef::top()) == "TOP");
  CHECK(until.label(StateRef::bottom()) == "BOTTOM");

  CHECK_THROWS_AS(Automaton(Formula::finally(mu)), error);
}

TEST_CASE("accepting_set follows the recursive rules") {
  const Formula mu = eqc("a", "b"), eta = eqc("c", "d");
  const Formula x_eq_y = parse(R"(exists x in "/m/a" : exists y in "/m/b" : x = y)").body().body();
  {
    const Automaton a(Formula::exists("x", Path::parse("/m/a"), Formula::exists("y", Path::parse("/m/b"), x_eq_y)));
    CHECK(a.accepting_set(*a.find(x_eq_y)) == std::set<StateRef>{StateRef::top()});
  }
  {
    const Formula r = Formula::release(mu, eta);
    const Automaton a(r);
    CHECK(a.accepting() == refs(a, {r}));
  }
  {
    const Automaton a(Formula::until(lowered_true(), mu));
    CHECK(a.accepting() == std::set<StateRef>{StateRef::top()});
  }
  {
    // nested: Releases under X, U and quantifiers are all collected
    const Formula r1 = Formula::release(mu, eta);
    const Formula r2 = Formula::release(eta, mu);
    const Formula phi = Formula::until(Formula::next(r1), Formula::exists("x", Path::parse("/m/a"), r2));
    const Automaton a(phi);
    CHECK(a.accepting() == refs(a, {r1, r2}));
    CHECK_FALSE(a.is_accepting(a.initial()));
    CHECK_FALSE(a.is_accepting(StateRef::bottom()));
  }
}

TEST_CASE("delta: documented cases") {
  const Message stock = parse_message(stock_message);
  const Message other = parse_message(R"({"m":{"a":"1"}})");

  {
    const Formula phi = Formula::exists(
        "x", Path::parse("/m/a"),
        Formula::exists("y", Path::parse("/m/b"), Formula::equal(Term::variable("x"), Term::variable("y"))));
    const Automaton a(phi);
    const StateRef s = *a.find(phi.body().body());
    CHECK(a.delta(Valuation{{"x", "a"}, {"y", "a"}}, s, other).is_true());
    CHECK(a.delta(Valuation{{"x", "a"}, {"y", "b"}}, s, other).is_false());
  }
  {
    const Automaton a = compile(R"(forall x in "/message/absent" : x != x)");
    CHECK(a.delta({}, a.initial(), stock).is_true());
  }
  {
    const Automaton a = compile(R"(exists x in "/message/stock/name" : x = "stock-2")");
    const PositiveExpr raw = a.delta_expr({}, a.initial(), stock);
    // one operand per value plus the trailing BOTTOM
    REQUIRE(raw.kind == PositiveExpr::Kind::any);
    CHECK(raw.operands.size() == 3);
    CHECK(a.delta({}, a.initial(), stock).is_true());
  }
  {
    const Automaton a(Formula::until(eqc("a", "b"), eqc("c", "d")));
    CHECK(a.delta({}, a.initial(), other).is_false());
  }
  {
    // U with a false left operand and pending right one: only the right one survives
    const Formula phi = Formula::until(eqc("a", "b"), Formula::next(eqc("c", "c")));
    const Automaton a(phi);
    const auto d = a.delta({}, a.initial(), other);
    REQUIRE(d.size() == 1);
    CHECK(d.conjuncts()[0] == Conjunct{{*a.find(eqc("c", "c")), {}}});
  }
  {
    // U keeps its self-loop obligation when the left side holds
    const Formula phi = Formula::until(eqc("a", "a"), eqc("c", "d"));
    const Automaton a(phi);
    const auto d = a.delta({}, a.initial(), other);
    REQUIRE(d.size() == 1);
    CHECK(d.conjuncts()[0] == Conjunct{{a.initial(), {}}});
  }
  {
    // pits loop
    const Automaton a(eqc("a", "a"));
    CHECK(a.delta({}, StateRef::top(), other).is_true());
    CHECK(a.delta({}, StateRef::bottom(), other).is_false());
  }
}

TEST_CASE("delta on an unbound variable throws") {
  const Automaton a(Formula::equal(Term::variable("x"), Term::constant("v")));
  CHECK_THROWS_AS(a.delta({}, a.initial(), parse_message(R"({"m":"1"})")), undefined_variable);
}

TEST_CASE("delta properties over generated formulas") {
  FuzzBounds bounds;
  bounds.max_nodes = 16;
  std::size_t checked = 0;
  for (std::uint64_t i = 0; i < 300; ++i) {
    Generator g = Generator::for_case(23, i, bounds);
    const Formula nnf = to_nnf(g.formula());
    const Automaton a(nnf);
    INFO(to_string(nnf));
    CHECK(a.size() <= nnf.node_count() + 2);
    CHECK(a.size() == subformulas(nnf).size() + 2);

    // Walk reachable obligations over a few random messages.
    std::vector<Obligation> frontier{a.initial_obligation()};
    std::set<Obligation> seen(frontier.begin(), frontier.end());
    for (int step = 0; step < 4 && !frontier.empty(); ++step) {
      const Message m = g.message();
      std::vector<Obligation> next;
      for (const auto& o : frontier) {
        const Formula& src = a.formula(o.state);
        const PositiveExpr raw = a.delta_expr(o.valuation, o.state, m);
        const TransitionDnf d = to_dnf(raw);
        ++checked;

        if (temporal_depth(src) == 0)
          CHECK((d.is_true() || d.is_false()));

        for (const auto& c : d.conjuncts())
          for (const auto& q : c) {
            REQUIRE(q.state.index < a.size());
            const Formula& tgt = a.formula(q.state);
            for (const auto& v : free_variables(tgt))
              CHECK(q.valuation.contains(v));
            const bool smaller = temporal_depth(tgt) < temporal_depth(src);
            // otherwise an Until/Release of the same depth, e.g. the self-loop
            const bool loop_like = temporal_depth(tgt) == temporal_depth(src) &&
                                   (tgt.op() == Op::until || tgt.op() == Op::release);
            CHECK((smaller || loop_like));
            if (seen.insert(q).second)
              next.push_back(q);
          }

        // normalization preserves the set of satisfying obligation sets
        std::set<Obligation> universe;
        atoms(raw, universe);
        std::vector<Obligation> u(universe.begin(), universe.end());
        if (u.size() <= 10) {
          for (unsigned mask = 0; mask < (1u << u.size()); ++mask) {
            std::set<Obligation> held;
            for (std::size_t b = 0; b < u.size(); ++b)
              if (mask >> b & 1u)
                held.insert(u[b]);
            const bool dnf_holds = std::any_of(d.conjuncts().begin(), d.conjuncts().end(), [&](const Conjunct& c) {
              return std::all_of(c.begin(), c.end(), [&](const Obligation& q) { return held.count(q) > 0; });
            });
            CHECK(dnf_holds == holds(raw, held));
          }
        }
      }
      frontier = std::move(next);
    }
  }
  CHECK(checked > 300);
}

TEST_CASE("transition cache returns the uncached result") {
  const Automaton a = compile(R"(G forall x in "/m/a" : F exists y in "/m/a" : x = y)");
  TransitionCache cache(a);
  Generator g(5, {});
  for (int i = 0; i < 20; ++i) {
    const Message m = g.message();
    const Obligation o = a.initial_obligation();
    CHECK(cache.delta(o, i, m) == a.delta(o, m));
    CHECK(cache.delta(o, i, m) == a.delta(o, m));
  }
  CHECK(cache.size() == 20);
}

TEST_CASE("DOT export lists states and marks accepting ones") {
  const Automaton a = compile(R"("a" = "b" R "c" = "d")");
  const std::string dot = to_dot(a);
  CHECK(dot.find("digraph") == 0);
  CHECK(dot.find(R"(label="\"a\" = \"b\" R \"c\" = \"d\"", shape=doublecircle)") != std::string::npos);
  CHECK(dot.find(R"(label="TOP", shape=doublecircle)") != std::string::npos);
  CHECK(dot.find(R"(label="BOTTOM", shape=circle)") != std::string::npos);
  CHECK(dot.find("init -> s2") != std::string::npos);
}
