#include <catch_amalgamated.hpp>

#include <ltlfo/events.hpp>
#include <ltlfo/fuzz.hpp>

using namespace ltlfo;

namespace {

const char* stock_message =
    R"({"message":{"action":"placeBuyOrder","stock":[{"name":"stock-1","amount":"123"},{"name":"stock-2","amount":"456"}]}})";

Message leaf_message(const std::string& v) { return parse_message(R"({"m":{"a":")" + v + R"("}})"); }

} // namespace

TEST_CASE("dom on the stock message") {
  const Message m = parse_message(stock_message);
  CHECK(dom(m, Path::parse("/message/stock/name")) == std::set<std::string>{"stock-1", "stock-2"});
  CHECK(dom(m, Path::parse("/message/action")) == std::set<std::string>{"placeBuyOrder"});
  CHECK(dom(m, Path::parse("/message/stock/amount")) == std::set<std::string>{"123", "456"});
  // stock elements have element children, not text
  CHECK(dom(m, Path::parse("/message/stock")).empty());
  CHECK(dom(m, Path::parse("/nonexistent")).empty());
  CHECK(dom(m, Path::parse("/message/nonexistent")).empty());
  CHECK(dom(m, Path::parse("/message/stock/name/deeper")).empty());
}

TEST_CASE("dom collapses duplicate values") {
  const Message m = parse_message(R"({"m":{"name":["v","v"]}})");
  CHECK(dom(m, Path::parse("/m/name")) == std::set<std::string>{"v"});
}

TEST_CASE("dom on a text root") {
  const Message m = parse_message(R"({"m":"x"})");
  CHECK(dom(m, Path::parse("/m")) == std::set<std::string>{"x"});
  CHECK(dom(m, Path::parse("/n")).empty());
}

TEST_CASE("parse_message maps JSON to the tree") {
  const Message m = parse_message(R"({"message":{"action":"a"}})");
  const Node expected = Node::element("message", {Node::element("action", {Node::text("a")})});
  CHECK(m.root() == expected);

  const Message s = parse_message(R"({"message":{"stock":[{"name":"stock-1"},{"name":"stock-2"}]}})");
  REQUIRE(s.root().children().size() == 2);
  CHECK(s.root().children()[0].name() == "stock");
  CHECK(s.root().children()[1].name() == "stock");
  CHECK(dom(s, Path::parse("/message/stock/name")) == std::set<std::string>{"stock-1", "stock-2"});
}

TEST_CASE("key order is preserved as child order") {
  const Message m = parse_message(R"({"m":{"z":"1","a":"2","k":"3"}})");
  std::vector<std::string> names;
  for (const auto& c : m.root().children())
    names.push_back(c.name());
  CHECK(names == std::vector<std::string>{"z", "a", "k"});
}

TEST_CASE("malformed messages are rejected") {
  CHECK_THROWS_AS(parse_message("not json", 4), malformed_input);
  CHECK_THROWS_AS(parse_message(R"({"a":"1","b":"2"})"), malformed_input);
  CHECK_THROWS_AS(parse_message(R"({"m":5})"), malformed_input);
  CHECK_THROWS_AS(parse_message(R"({"m":{"a":[["x"]]}})"), malformed_input);
  CHECK_THROWS_AS(parse_message(R"({"m":{"a":null}})"), malformed_input);
  CHECK_THROWS_AS(parse_message(R"(["m"])"), malformed_input);
  try {
    parse_message("{", 17);
    FAIL("expected malformed_input");
  } catch (const malformed_input& e) {
    CHECK(e.line() == 17);
  }
}

TEST_CASE("load_trace reads JSON lines and reports the failing line") {
  const Trace t = load_trace("{\"m\":{\"a\":\"1\"}}\n\n{\"m\":{\"a\":\"2\"}}\n");
  REQUIRE(t.size() == 2);
  CHECK(dom(t[1], Path::parse("/m/a")) == std::set<std::string>{"2"});
  CHECK(load_trace("").empty());

  try {
    load_trace("{\"m\":\"1\"}\n{\"m\":\"2\"}\n{oops}\n");
    FAIL("expected malformed_input");
  } catch (const malformed_input& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("load_lasso") {
  const LassoTrace t = load_lasso(R"({"prefix":[{"m":"p"}],"loop":[{"m":"a"},{"m":"b"}]})");
  CHECK(t.prefix().size() == 1);
  CHECK(t.loop().size() == 2);
  CHECK_THROWS_AS(load_lasso(R"({"prefix":[],"loop":[]})"), empty_loop);
  CHECK_THROWS_AS(load_lasso(R"({"prefix":[]})"), malformed_input);
  CHECK_THROWS_AS(load_lasso(R"({"prefix":[],"loop":[{"m":1}]})"), malformed_input);
  CHECK_THROWS_AS(load_lasso(R"({"loop":[{"m":"a"}],"extra":1})"), malformed_input);
  CHECK(load_lasso(R"({"loop":[{"m":"a"}]})").prefix().empty());
  CHECK_THROWS_AS(LassoTrace({}, {}), empty_loop);
}

TEST_CASE("position_message indexes prefix then loop") {
  std::vector<Message> prefix{leaf_message("p0"), leaf_message("p1")};
  std::vector<Message> loop{leaf_message("l0"), leaf_message("l1"), leaf_message("l2")};
  const LassoTrace t(prefix, loop);
  CHECK(position_message(t, 1) == prefix[1]);
  CHECK(position_message(t, 2) == loop[0]);
  CHECK(position_message(t, 7) == loop[2]);
  CHECK(t.canonical(7) == 4);
  CHECK(t.successor(4) == 2);
  CHECK(t.successor(1) == 2);

  for (std::size_t i = 2; i < 40; ++i)
    CHECK(position_message(t, i) == position_message(t, i + loop.size()));
}

TEST_CASE("serialize then parse is the identity on generated messages") {
  Generator g(99, {});
  for (int i = 0; i < 300; ++i) {
    const Message m = g.message();
    INFO(serialize(m));
    CHECK(parse_message(serialize(m)) == m);
  }
  const Message stock = parse_message(stock_message);
  CHECK(parse_message(serialize(stock)) == stock);
}

TEST_CASE("dom is pure") {
  const Message m = parse_message(stock_message);
  const Path p = Path::parse("/message/stock/name");
  CHECK(dom(m, p) == dom(m, p));
}
