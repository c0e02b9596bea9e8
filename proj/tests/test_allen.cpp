#include <doctest.h>

#include <cstdint>
#include <string>
#include <vector>

#include "st/allen.hpp"
#include "st/expr.hpp"
#include "st/verify.hpp"

#include "helpers.hpp"

using namespace st;

namespace {

// Direct endpoint predicates, written from the interval pictures rather
// than from the event encodings.
bool holds(AllenRelation rel, std::uint64_t xs, std::uint64_t xf, std::uint64_t ys,
           std::uint64_t yf) {
  switch (rel) {
    case AllenRelation::Before: return xf < ys;
    case AllenRelation::After: return yf < xs;
    case AllenRelation::Meets: return xf == ys;
    case AllenRelation::MetBy: return yf == xs;
    case AllenRelation::Overlaps: return xs < ys && ys < xf && xf < yf;
    case AllenRelation::OverlappedBy: return ys < xs && xs < yf && yf < xf;
    case AllenRelation::Starts: return xs == ys && xf < yf;
    case AllenRelation::StartedBy: return xs == ys && yf < xf;
    case AllenRelation::During: return ys < xs && xf < yf;
    case AllenRelation::Contains: return xs < ys && yf < xf;
    case AllenRelation::Finishes: return ys < xs && xf == yf;
    case AllenRelation::FinishedBy: return xs < ys && xf == yf;
    case AllenRelation::Equals: return xs == ys && xf == yf;
  }
  return false;
}

AllenRelation inverse(AllenRelation rel) {
  switch (rel) {
    case AllenRelation::Before: return AllenRelation::After;
    case AllenRelation::After: return AllenRelation::Before;
    case AllenRelation::Meets: return AllenRelation::MetBy;
    case AllenRelation::MetBy: return AllenRelation::Meets;
    case AllenRelation::Overlaps: return AllenRelation::OverlappedBy;
    case AllenRelation::OverlappedBy: return AllenRelation::Overlaps;
    case AllenRelation::Starts: return AllenRelation::StartedBy;
    case AllenRelation::StartedBy: return AllenRelation::Starts;
    case AllenRelation::During: return AllenRelation::Contains;
    case AllenRelation::Contains: return AllenRelation::During;
    case AllenRelation::Finishes: return AllenRelation::FinishedBy;
    case AllenRelation::FinishedBy: return AllenRelation::Finishes;
    case AllenRelation::Equals: return AllenRelation::Equals;
  }
  return rel;
}

// All non-degenerate placements of one interval over {0..5}.
std::vector<IntervalEvents> placements() {
  std::vector<IntervalEvents> out;
  for (std::uint64_t s = 0; s <= 5; ++s)
    for (std::uint64_t f = s + 1; f <= 5; ++f) out.push_back({Time::finite(s), Time::finite(f)});
  return out;
}

} // namespace

TEST_CASE("relation names round trip") {
  for (AllenRelation rel : all_allen_relations)
    CHECK(allen_relation_from_name(allen_relation_name(rel)) == rel);
  CHECK(allen_relation_from_name("met-by") == AllenRelation::MetBy);
  CHECK_THROWS_AS(allen_relation_from_name("touches"), std::invalid_argument);
}

TEST_CASE("encodings render as the event expressions") {
  CHECK(format_expr(encode(AllenRelation::Before)) == "Xf < Ys");
  CHECK(format_expr(encode(AllenRelation::After)) == "Yf < Xs");
  CHECK(format_expr(encode(AllenRelation::Meets)) == "Xf == Ys");
  CHECK(format_expr(encode(AllenRelation::Overlaps)) == "Xs < Ys | Ys < Xf | Xf < Yf");
  CHECK(format_expr(encode(AllenRelation::Starts)) == "Xs == Ys | Xf < Yf");
  CHECK(format_expr(encode(AllenRelation::During)) == "Ys < Xs | Xf < Yf");
  CHECK(format_expr(encode(AllenRelation::Finishes)) == "Ys < Xs | Xf == Yf");
  CHECK(format_expr(encode(AllenRelation::Equals)) == "Xs == Ys | Xf == Yf");
  for (AllenRelation rel : all_allen_relations) {
    CHECK(encode(rel).inputs == std::vector<std::string>{"Xs", "Xf", "Ys", "Yf"});
    CHECK(check_spacetime(encode(rel), {4}).ok);
  }
}

TEST_CASE("satisfaction value is the latest deciding event") {
  CHECK(eval_intervals(AllenRelation::Overlaps, {Time::finite(0), Time::finite(2)},
                       {Time::finite(1), Time::finite(3)}) == Time::finite(2));
  CHECK(eval_intervals(AllenRelation::Meets, {Time::finite(0), Time::finite(4)},
                       {Time::finite(4), Time::finite(9)}) == Time::finite(4));
  CHECK(eval_intervals(AllenRelation::Before, {Time::finite(0), Time::finite(5)},
                       {Time::finite(3), Time::finite(9)}) == Time::infinity());
}

TEST_CASE("degenerate intervals are rejected") {
  IntervalEvents ok{Time::finite(0), Time::finite(1)};
  CHECK_THROWS_AS(eval_intervals(AllenRelation::Before, {Time::finite(2), Time::finite(2)}, ok),
                  std::invalid_argument);
  CHECK_THROWS_AS(eval_intervals(AllenRelation::Before, ok, {Time::finite(3), Time::finite(1)}),
                  std::invalid_argument);
  // An interval that never finishes is not degenerate; Lt reports its
  // first operand, so the value here is X's finish.
  CHECK(eval_intervals(AllenRelation::Before, ok, {Time::finite(2), Time::infinity()}) ==
        Time::finite(1));
}

TEST_CASE("each placement satisfies exactly its own relation") {
  for (const IntervalEvents& x : placements()) {
    for (const IntervalEvents& y : placements()) {
      int satisfied = 0;
      for (AllenRelation rel : all_allen_relations) {
        bool want = holds(rel, x.s.value(), x.f.value(), y.s.value(), y.f.value());
        Time got = eval_intervals(rel, x, y);
        INFO(allen_relation_name(rel), " X=[", x.s.value(), ",", x.f.value(), "] Y=[", y.s.value(),
             ",", y.f.value(), "]");
        REQUIRE(got.is_finite() == want);
        satisfied += want;
        REQUIRE(eval_intervals(inverse(rel), y, x) == got);
      }
      REQUIRE(satisfied == 1);
    }
  }
}

TEST_CASE("bounded satisfaction finds the smallest witness") {
  Network before = encode(AllenRelation::Before);
  auto witness = satisfiable(before, {5}, interval_constraints(before.inputs));
  REQUIRE(witness);
  CHECK(*witness == Binding{{"Xs", Time::finite(0)},
                            {"Xf", Time::finite(1)},
                            {"Ys", Time::finite(2)},
                            {"Yf", Time::finite(3)}});

  // X strictly before Y and Y strictly before X cannot both hold.
  Network cyclic = parse_expr("(Xf < Ys) | (Yf < Xs)");
  CHECK(!satisfiable(cyclic, {5}, interval_constraints(cyclic.inputs)));

  // A bare occurrence term is satisfied by the event itself.
  Network bare = parse_expr("Bs");
  auto only = satisfiable(bare, {5}, {});
  REQUIRE(only);
  CHECK(only->at("Bs") == Time::finite(0));
}

TEST_CASE("satisfaction preconditions") {
  Network wide = parse_expr("a & b & c & d & e & f & g");
  CHECK_THROWS_AS(satisfiable(wide, {2}, {}), std::invalid_argument);
  Network narrow = parse_expr("a & b");
  CHECK_THROWS_AS(satisfiable(narrow, {2}, {{"a", "missing"}}), std::invalid_argument);
}

TEST_CASE("strongest implied order classes") {
  Network dinner = parse_expr("(Ds < Rs) | (Rf < Df) | (Df < Bs)");
  auto pairs = interval_constraints(dinner.inputs);
  REQUIRE(pairs == std::vector<std::pair<std::string, std::string>>{{"Ds", "Df"}, {"Rs", "Rf"}});
  CHECK(strongest_implied(dinner, {5}, "Ds", "Df", pairs) == std::set<char>{'<'});

  Network eq = encode(AllenRelation::Equals);
  CHECK(strongest_implied(eq, {4}, "Xs", "Ys", interval_constraints(eq.inputs)) ==
        std::set<char>{'='});

  // An event the expression never mentions is free.
  Network loose;
  NodeId a = loose.add_input("a");
  NodeId b = loose.add_input("b");
  loose.add_input("c");
  loose.add_output(loose.add_binary(OpKind::Lt, a, b));
  CHECK(strongest_implied(loose, {3}, "a", "c", {}) == std::set<char>{'<', '=', '>'});

  Network cyclic = parse_expr("(Xf < Ys) | (Yf < Xs)");
  CHECK(strongest_implied(cyclic, {4}, "Xs", "Ys", interval_constraints(cyclic.inputs)).empty());

  CHECK_THROWS_AS(strongest_implied(loose, {3}, "a", "zz", {}), std::invalid_argument);
}

TEST_CASE("event bindings accept plain times and clock readings") {
  Binding plain = parse_event_bindings({{"a", "5"}, {"b", "inf"}});
  CHECK(plain.at("a") == Time::finite(5));
  CHECK(plain.at("b") == Time::infinity());

  Binding dinner = parse_event_bindings({{"Ds", "19:00"},
                                         {"Rs", "19:10"},
                                         {"Rf", "20:00"},
                                         {"Df", "20:10"},
                                         {"Bs", "21:00"}});
  CHECK(dinner.at("Ds") == Time::finite(0));
  CHECK(dinner.at("Rs") == Time::finite(10));
  CHECK(dinner.at("Rf") == Time::finite(60));
  CHECK(dinner.at("Df") == Time::finite(70));
  CHECK(dinner.at("Bs") == Time::finite(120));

  // Dinner is on the table at 70 minutes past the first event: 8:10.
  Network expr = parse_expr("(Ds < Rs) | (Rf < Df) | (Df < Bs)");
  CHECK(expr.evaluate(dinner).at(0) == Time::finite(70));

  CHECK_THROWS_AS(parse_event_bindings({{"a", "19:00"}, {"b", "3"}}), std::invalid_argument);
  CHECK_THROWS_AS(parse_event_bindings({{"a", "19:5"}}), std::invalid_argument);
  CHECK_THROWS_AS(parse_event_bindings({{"a", "19:60"}}), std::invalid_argument);
  CHECK_THROWS_AS(parse_event_bindings({{"a", "1"}, {"a", "2"}}), std::invalid_argument);
  CHECK_THROWS_AS(parse_event_bindings({{"a", ":30"}}), std::invalid_argument);
}
