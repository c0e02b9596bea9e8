#include <doctest.h>

#include <random>
#include <string>

#include "helpers.hpp"
#include "st/expr.hpp"
#include "st/netfile.hpp"
#include "st/network.hpp"

using st::Binding;
using st::Network;
using st::NodeId;
using st::OpKind;
using st::ParseError;
using st::Time;

namespace {
const Time inf = Time::infinity();
Time ft(std::uint64_t v) { return Time::finite(v); }
} // namespace

TEST_CASE("expressions evaluate over named bindings") {
  auto net = st::parse_expr("a & b");
  CHECK(net.evaluate_one({{"a", ft(3)}, {"b", ft(5)}}) == ft(3));
  CHECK(net.evaluate_one({{"a", inf}, {"b", ft(4)}}) == ft(4));

  auto shifted = st::parse_expr("(a + 2) < b");
  CHECK(shifted.evaluate_one({{"a", ft(1)}, {"b", ft(5)}}) == ft(3));
  CHECK(shifted.evaluate_one({{"a", ft(3)}, {"b", ft(5)}}) == inf);

  auto tie = st::parse_expr("xmin(a, b)");
  CHECK(tie.evaluate_one({{"a", ft(2)}, {"b", ft(2)}}) == inf);
  CHECK(tie.evaluate_one({{"a", ft(2)}, {"b", ft(7)}}) == ft(2));

  // extra binding entries are ignored; missing ones are an error
  CHECK(net.evaluate_one({{"a", ft(1)}, {"b", ft(2)}, {"z", ft(9)}}) == ft(1));
  CHECK_THROWS_AS(net.evaluate_one({{"a", ft(1)}}), std::invalid_argument);
}

TEST_CASE("join binds looser than meet, which binds looser than relations") {
  auto net = st::parse_expr("a | b & c");
  CHECK(st::structural_equal(net, st::parse_expr("a | (b & c)")));
  CHECK_FALSE(st::structural_equal(net, st::parse_expr("(a | b) & c")));

  auto rel = st::parse_expr("a < b & c");
  CHECK(st::structural_equal(rel, st::parse_expr("(a < b) & c")));

  auto shifted = st::parse_expr("a + 1 < b");
  CHECK(st::structural_equal(shifted, st::parse_expr("(a + 1) < b")));
}

TEST_CASE("relational chains must be parenthesized") {
  CHECK_THROWS_AS(st::parse_expr("a < b < c"), ParseError);
  try {
    st::parse_expr("a < b < c");
  } catch (const ParseError& e) {
    CHECK(e.position == 6);
    CHECK(std::string(e.what()).find("parenthesize") != std::string::npos);
  }
  CHECK_NOTHROW(st::parse_expr("(a < b) < c"));
  CHECK_NOTHROW(st::parse_expr("a < (b < c)"));
  CHECK_THROWS_AS(st::parse_expr("a == b != c"), ParseError);
}

TEST_CASE("malformed expressions are rejected with positions") {
  CHECK_THROWS_AS(st::parse_expr(""), ParseError);
  CHECK_THROWS_AS(st::parse_expr("a &"), ParseError);
  CHECK_THROWS_AS(st::parse_expr("(a | b"), ParseError);
  CHECK_THROWS_AS(st::parse_expr("a b"), ParseError);
  CHECK_THROWS_AS(st::parse_expr("a + x"), ParseError);
  CHECK_THROWS_AS(st::parse_expr("3 < a"), ParseError);
  CHECK_THROWS_AS(st::parse_expr("inf & a"), ParseError);
  CHECK_THROWS_AS(st::parse_expr("xmin(a)"), ParseError);
  CHECK_THROWS_AS(st::parse_expr("min(a, b)"), ParseError);
}

TEST_CASE("identifiers may use underscores and digits") {
  auto net = st::parse_expr("foo_1 < bar + 2");
  CHECK(net.arity() == 2);
  CHECK(net.evaluate_one({{"foo_1", ft(1)}, {"bar", ft(0)}}) == ft(1));
}

TEST_CASE("evaluation touches every node exactly once, even with sharing") {
  Network net;
  NodeId a = net.add_input("a");
  NodeId d = net.add_delay(a, 1);
  NodeId m = net.add_binary(OpKind::Min, d, d);
  net.add_output(m);

  st::EvalStats stats;
  CHECK(net.evaluate(Binding{{"a", ft(4)}}, &stats)[0] == ft(5));
  CHECK(stats.node_evals == net.nodes.size());
  CHECK(stats.node_evals == 3);
}

TEST_CASE("zero delays collapse at construction") {
  Network net;
  NodeId a = net.add_input("a");
  CHECK(net.add_delay(a, 0) == a);
  CHECK(net.nodes.size() == 1);
}

TEST_CASE("pruning drops unreachable nodes and preserves behavior") {
  Network net;
  NodeId a = net.add_input("a");
  NodeId b = net.add_input("b");
  net.add_binary(OpKind::Max, a, b); // dead
  NodeId keep = net.add_binary(OpKind::Lt, a, b);
  net.add_output(keep);

  Network slim = net.pruned();
  CHECK(slim.nodes.size() == 3);
  CHECK(slim.arity() == 2);
  for (Time x : test_domain(3))
    for (Time y : test_domain(3)) {
      Binding bind{{"a", x}, {"b", y}};
      CHECK(slim.evaluate_one(bind) == net.evaluate_one(bind));
    }
}

TEST_CASE("rendered expressions parse back to the same tree") {
  std::mt19937_64 rng(20240817);
  const char* vars[] = {"a", "b", "c"};
  for (int round = 0; round < 300; ++round) {
    Network net;
    auto build = [&](auto&& self, int depth) -> NodeId {
      if (depth == 0 || rng() % 4 == 0)
        return net.add_input(vars[rng() % 3]);
      if (rng() % 5 == 0) return net.add_delay(self(self, depth - 1), 1 + rng() % 3);
      OpKind op = st::all_op_kinds[rng() % 10];
      NodeId lhs = self(self, depth - 1);
      NodeId rhs = self(self, depth - 1);
      return net.add_binary(op, lhs, rhs);
    };
    net.add_output(build(build, 4));
    std::string text = st::format_expr(net);
    CAPTURE(text);
    Network back = st::parse_expr(text);
    CHECK(st::structural_equal(net, back));
    CHECK(st::format_expr(back) == text);
  }
}

TEST_CASE("network files read, evaluate, and write back") {
  const char* text =
      "# two-input example\n"
      "input a\n"
      "input b\n"
      "n0 = delay a 2   # shift a\n"
      "n1 = lt n0 b\n"
      "n2 = min n1 b\n"
      "output n2\n";
  Network net = st::read_network(text);
  CHECK(net.arity() == 2);
  CHECK(net.evaluate_one({{"a", ft(0)}, {"b", ft(5)}}) == ft(2));
  CHECK(net.evaluate_one({{"a", ft(4)}, {"b", ft(5)}}) == ft(5));

  std::string out = st::write_network(net);
  Network back = st::read_network(out);
  CHECK(st::structural_equal(net, back));
  CHECK(st::write_network(back) == out);
}

TEST_CASE("network files report the offending line") {
  auto line_of = [](const char* text) -> std::size_t {
    try {
      st::read_network(text);
    } catch (const ParseError& e) {
      return e.position;
    }
    return 0;
  };
  CHECK(line_of("input a\nn0 = lt a z\noutput n0\n") == 2);
  CHECK(line_of("input a\nn0 = foo a a\noutput n0\n") == 2);
  CHECK(line_of("input a\ninput a\n") == 2);
  CHECK(line_of("input a\nn0 = delay a -1\noutput n0\n") == 2);
  CHECK(line_of("input a\na = lt a a\n") == 2);
  CHECK(line_of("input a\nnonsense\n") == 2);
  CHECK_THROWS_AS(st::read_network("input a\n"), ParseError);   // no output
  CHECK_THROWS_AS(st::read_network("# empty\n"), ParseError);   // no inputs
}

TEST_CASE("multi-output networks evaluate in output order") {
  Network net;
  NodeId a = net.add_input("a");
  NodeId b = net.add_input("b");
  net.add_output(net.add_binary(OpKind::Min, a, b));
  net.add_output(net.add_binary(OpKind::Max, a, b));
  auto out = net.evaluate(Binding{{"a", ft(7)}, {"b", ft(2)}});
  REQUIRE(out.size() == 2);
  CHECK(out[0] == ft(2));
  CHECK(out[1] == ft(7));
  CHECK_THROWS_AS(net.evaluate_one(Binding{{"a", ft(7)}, {"b", ft(2)}}),
                  std::invalid_argument);
}
