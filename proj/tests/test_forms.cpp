#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "st/expr.hpp"
#include "st/forms.hpp"
#include "st/netfile.hpp"
#include "st/verify.hpp"

#include "helpers.hpp"

using namespace st;

namespace {

// Ordered-set-partition counts by the standard recurrence
// F(n) = sum_k C(n,k) * F(n-k), computed without touching the library.
std::vector<std::uint64_t> partition_counts(std::size_t up_to) {
  std::vector<std::vector<std::uint64_t>> choose(up_to + 1);
  for (std::size_t n = 0; n <= up_to; ++n) {
    choose[n].assign(n + 1, 1);
    for (std::size_t k = 1; k < n; ++k) choose[n][k] = choose[n - 1][k - 1] + choose[n - 1][k];
  }
  std::vector<std::uint64_t> f{1};
  for (std::size_t n = 1; n <= up_to; ++n) {
    std::uint64_t total = 0;
    for (std::size_t k = 1; k <= n; ++k) total += choose[n][k] * f[n - k];
    f.push_back(total);
  }
  return f;
}

std::vector<std::string> var_names(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(std::string(1, static_cast<char>('a' + i)));
  return names;
}

// The worked three-input table: four patterns fire at the second group's
// time, everything else is silent.
SequenceTable example_table() {
  SequenceTable table;
  table.variables = {"a", "b", "c"};
  std::map<std::string, std::size_t> fires = {
      {"a<b<c", 1}, {"b<a=c", 1}, {"b=c<a", 1}, {"c<a=b", 1}};
  for (const Sequence& seq : enumerate_sequences(table.variables)) {
    auto it = fires.find(seq.render());
    table.rows.push_back({seq, it == fires.end() ? std::optional<std::size_t>{} : std::optional<std::size_t>{it->second}});
  }
  return table;
}

Term lt(std::string a, std::string b) { return {{std::move(a)}, Rel::Lt, {std::move(b)}}; }
Term eq(std::string a, std::string b) { return {{std::move(a)}, Rel::Eq, {std::move(b)}}; }
Term le(std::string a, std::string b) { return {{std::move(a)}, Rel::Le, {std::move(b)}}; }

bool equivalent(const Network& lhs, const Network& rhs, std::uint64_t horizon) {
  if (lhs.inputs != rhs.inputs) return false;
  bool same = true;
  for_all_bindings(lhs.inputs, horizon, [&](const Binding& b) {
    if (!same) return;
    if (lhs.evaluate(b) != rhs.evaluate(b)) same = false;
  });
  return same;
}

} // namespace

TEST_CASE("sequence rendering and parsing") {
  Sequence seq = Sequence::parse("c = b < a");
  CHECK(seq.groups == std::vector<std::vector<std::string>>{{"b", "c"}, {"a"}});
  CHECK(seq.render() == "b=c<a");
  CHECK(Sequence::parse(seq.render()) == seq);

  CHECK(Sequence::parse("a").render() == "a");
  CHECK(Sequence::parse("a=b=c").render() == "a=b=c");

  CHECK_THROWS_AS(Sequence::parse("a<a"), std::invalid_argument);
  CHECK_THROWS_AS(Sequence::parse("a<b=a"), std::invalid_argument);
  CHECK_THROWS_AS(Sequence::parse("a<"), std::invalid_argument);
  CHECK_THROWS_AS(Sequence::parse("a<1b"), std::invalid_argument);
  CHECK_THROWS_AS(Sequence::parse("inf<a"), std::invalid_argument);
}

TEST_CASE("sequence enumeration matches the partition recurrence") {
  auto expected = partition_counts(5);
  CHECK(expected == std::vector<std::uint64_t>{1, 1, 3, 13, 75, 541});
  for (std::size_t n = 1; n <= 5; ++n) {
    auto seqs = enumerate_sequences(var_names(n));
    CHECK(seqs.size() == expected[n]);
    std::set<std::string> renderings;
    for (const Sequence& s : seqs) renderings.insert(s.render());
    CHECK(renderings.size() == seqs.size());
    CHECK(std::is_sorted(seqs.begin(), seqs.end(), [](const Sequence& a, const Sequence& b) {
      return a.render() < b.render();
    }));
  }
  CHECK_THROWS_AS(enumerate_sequences(var_names(6)), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_sequences({}), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_sequences({"a", "a"}), std::invalid_argument);
}

TEST_CASE("three-variable enumeration lists all thirteen orderings") {
  std::set<std::string> got;
  for (const Sequence& s : enumerate_sequences({"a", "b", "c"})) got.insert(s.render());
  std::set<std::string> want = {"a<b<c", "a<b=c", "a<c<b", "a=b<c", "a=b=c", "a=c<b", "b<a<c",
                                "b<a=c", "b<c<a", "b=c<a", "c<a<b", "c<a=b", "c<b<a"};
  CHECK(got == want);
}

TEST_CASE("tabulating min and a bare comparison") {
  SequenceTable tmin = build_table(parse_expr("a & b"));
  REQUIRE(tmin.rows.size() == 3);
  CHECK(tmin.variables == std::vector<std::string>{"a", "b"});
  CHECK(tmin.rows[0].seq.render() == "a<b");
  CHECK(tmin.rows[0].output == 0);
  CHECK(tmin.rows[1].seq.render() == "a=b");
  CHECK(tmin.rows[1].output == 0);
  CHECK(tmin.rows[2].seq.render() == "b<a");
  CHECK(tmin.rows[2].output == 0);

  SequenceTable tlt = build_table(parse_expr("a < b"));
  CHECK(tlt.rows[0].output == 0);
  CHECK(!tlt.rows[1].output);
  CHECK(!tlt.rows[2].output);
}

TEST_CASE("tabulation preconditions") {
  CHECK_THROWS_AS(build_table(parse_expr("a + 1")), std::invalid_argument);
  CHECK_THROWS_AS(build_table(parse_expr("(a & b) & (c & d) & (e & f)")), std::invalid_argument);
  Network two = read_network("input a\nn0 = min a a\noutput n0\noutput a\n");
  CHECK_THROWS_AS(build_table(two), std::invalid_argument);
}

TEST_CASE("tabulation does not depend on the expression's shape") {
  // Same function, different trees.
  SequenceTable t1 = build_table(parse_expr("(a & b) | (a & c)"));
  SequenceTable t2 = build_table(parse_expr("a & (b | c)"));
  CHECK(t1 == t2);
}

TEST_CASE("near-end output condition") {
  SequenceTable table = example_table();
  CHECK(validate_table(table).ok);
  CHECK(validate_table(table).vectors == 13);

  SequenceTable bad = table;
  bad.rows[0].output = 0; // a<b<c -> a: first of three groups
  CheckReport report = validate_table(bad);
  REQUIRE(!report.ok);
  CHECK(report.failure->detail ==
        "row 'a<b<c': output group {a} is neither last nor next-to-last");

  // An everywhere-silent table is trivially fine.
  SequenceTable silent = table;
  for (auto& row : silent.rows) row.output.reset();
  CHECK(validate_table(silent).ok);
}

TEST_CASE("minterms of single rows") {
  // Early tie, output last and alone: equality chain, strict step, marker.
  SequenceRow tie_first{Sequence::parse("b=c<a"), 1};
  Implicant m1 = minterm_of(tie_first);
  CHECK(m1.terms == std::vector<Term>{eq("c", "b"), lt("b", "a")});
  CHECK(m1.markers == std::vector<Operand>{{"a"}});

  // All distinct, output in the middle: two strict steps, no marker.
  SequenceRow chain{Sequence::parse("a<b<c"), 1};
  Implicant m2 = minterm_of(chain);
  CHECK(m2.terms == std::vector<Term>{lt("a", "b"), lt("b", "c")});
  CHECK(m2.markers.empty());

  // Late tie: the closing equality chain runs forward, no marker.
  SequenceRow tie_last{Sequence::parse("b<a=c"), 1};
  Implicant m3 = minterm_of(tie_last);
  CHECK(m3.terms == std::vector<Term>{lt("b", "a"), eq("a", "c")});
  CHECK(m3.markers.empty());

  SequenceRow silent{Sequence::parse("a<b"), std::nullopt};
  CHECK_THROWS_AS(minterm_of(silent), std::invalid_argument);
}

TEST_CASE("canonical synthesis of the worked example") {
  SequenceTable table = example_table();
  Network net = synthesize_canonical(table);
  CHECK(format_expr(net) ==
        "(a < b | b < c) & (b < a | a == c) & (c == b | b < a | a) & (c < a | a == b)");

  auto at = [&](std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    std::vector<Time> v{Time::finite(a), Time::finite(b), Time::finite(c)};
    return net.evaluate(v).at(0);
  };
  CHECK(at(0, 1, 2) == Time::finite(1));
  CHECK(at(5, 1, 1) == Time::finite(5));
  CHECK(at(0, 0, 0) == Time::infinity());

  CHECK(build_table(net) == table);
  CHECK(check_spacetime(net, {6}).ok);
}

TEST_CASE("synthesis rejects tables that break the near-end condition") {
  SequenceTable bad = example_table();
  bad.rows[0].output = 0;
  CHECK_THROWS_AS(synthesize_canonical(bad), std::runtime_error);
}

TEST_CASE("standard-form synthesis") {
  Network net = synthesize_standard({{{lt("a", "b"), eq("b", "d")}, {}}}, {"a", "b", "d"});
  CHECK(structural_equal(net, parse_expr("a < b | b == d")));

  Network weak = synthesize_standard({{{le("a", "b")}, {}}}, {"a", "b"});
  for_all_bindings({"a", "b"}, 4, [&](const Binding& b) {
    Time expect = b.at("a") <= b.at("b") ? b.at("a") : Time::infinity();
    CHECK(weak.evaluate(b).at(0) == expect);
  });

  // Markers are bare delayed variables.
  Network marked = synthesize_standard({{{}, {{"a", 2}}}}, {"a"});
  std::vector<Time> three{Time::finite(3)};
  CHECK(marked.evaluate(three).at(0) == Time::finite(5));

  // No implicants: the silent function, with arity preserved.
  Network silent = synthesize_standard({}, {"a", "b"});
  CHECK(silent.arity() == 2);
  for_all_bindings({"a", "b"}, 3, [&](const Binding& b) {
    CHECK(silent.evaluate(b).at(0) == Time::infinity());
  });

  CHECK_THROWS_AS(synthesize_standard({{{lt("a", "a")}, {}}}, {"a"}), std::invalid_argument);
  CHECK_THROWS_AS(synthesize_standard({{{}, {}}}, {"a"}), std::invalid_argument);
  CHECK_THROWS_AS(synthesize_standard({{{lt("a", "x")}, {}}}, {"a", "b"}), std::invalid_argument);
  CHECK_THROWS_AS(synthesize_standard({}, {}), std::invalid_argument);
}

TEST_CASE("implicant consistency") {
  CHECK(implicant_consistent({{lt("a", "b"), eq("b", "d")}, {}}));
  CHECK(implicant_consistent({{lt("a", "b"), lt("c", "d")}, {}}));
  CHECK(implicant_consistent({{le("a", "b"), le("b", "a")}, {}}));
  CHECK(implicant_consistent({{eq("a", "b"), eq("b", "c")}, {}}));

  CHECK(!implicant_consistent({{lt("a", "b"), lt("b", "c"), lt("c", "a")}, {}}));
  CHECK(!implicant_consistent({{eq("a", "b"), lt("a", "b")}, {}}));
  CHECK(!implicant_consistent({{eq("a", "b"), eq("b", "c"), lt("c", "a")}, {}}));
  CHECK(!implicant_consistent({{le("a", "b"), lt("b", "a")}, {}}));
  CHECK(!implicant_consistent({{lt("a", "a")}, {}}));
}

TEST_CASE("weak-relation merging") {
  std::vector<Implicant> in = {{{lt("a", "b"), lt("c", "d")}, {}},
                               {{lt("a", "b"), eq("c", "d")}, {}}};
  std::vector<Implicant> out = merge_le(in);
  REQUIRE(out.size() == 1);
  CHECK(out[0] == Implicant{{lt("a", "b"), le("c", "d")}, {}});

  // Different markers block the merge.
  std::vector<Implicant> marked = {{{lt("a", "b")}, {{"a"}}}, {{eq("a", "b")}, {}}};
  CHECK(merge_le(marked) == marked);

  // min(a, b) via its three minterms collapses to two implicants...
  SequenceTable tmin = build_table(parse_expr("a & b"));
  std::vector<Implicant> minterms;
  for (const auto& row : tmin.rows) minterms.push_back(minterm_of(row));
  std::vector<Implicant> merged = merge_le(minterms);
  REQUIRE(merged.size() == 2);
  CHECK(merged[0] == Implicant{{le("a", "b")}, {}});
  // ...and the merged min is the same function.
  CHECK(equivalent(synthesize_standard(minterms, {"a", "b"}),
                   synthesize_standard(merged, {"a", "b"}), 5));
}

TEST_CASE("relations between delayed copies of one origin") {
  DelayAssignment taps = {{"a", 3, "u"}, {"a", 7, "v"}, {"b", 0, "b"}};

  // a+3 < a+7 always holds: the term disappears.
  auto out = simplify_delayed_relations({{{lt("u", "v"), lt("b", "u")}, {}}}, taps);
  REQUIRE(out.size() == 1);
  CHECK(out[0] == Implicant{{{{"b", 0}, Rel::Lt, {"a", 3}}}, {}});

  // a+7 < a+3 never holds: the whole implicant disappears.
  CHECK(simplify_delayed_relations({{{lt("v", "u")}, {}}}, taps).empty());
  CHECK(simplify_delayed_relations({{{eq("u", "v"), lt("b", "u")}, {}}}, taps).empty());

  // Cross-origin terms survive, rewritten to origin form.
  DelayAssignment two = {{"a", 2, "w"}, {"b", 0, "b"}};
  auto kept = simplify_delayed_relations({{{eq("w", "b")}, {}}}, two);
  REQUIRE(kept.size() == 1);
  CHECK(kept[0] == Implicant{{{{"a", 2}, Rel::Eq, {"b", 0}}}, {}});

  CHECK_THROWS_AS(simplify_delayed_relations({{{lt("z", "b")}, {}}}, two), std::invalid_argument);
}

TEST_CASE("full canonicalization of min") {
  CanonicalResult r = canonicalize(parse_expr("a & b"));
  REQUIRE(r.taps.size() == 2);
  CHECK(r.taps[0].origin == "a");
  CHECK(r.taps[0].k == 0);
  CHECK(r.taps[1].origin == "b");
  CHECK(format_expr(r.net) == "a < b & a == b & b < a");
  CHECK(equivalent(r.net, parse_expr("a & b"), 6));
}

TEST_CASE("canonicalization strips a redundant self-delay") {
  CanonicalResult r = canonicalize(parse_expr("(a + 1) & a"));
  REQUIRE(r.taps.size() == 2);
  CHECK(r.taps[1].k == 1);
  CHECK(r.taps[1].name == "a_d1");
  CHECK(format_expr(r.net) == "a");
  CHECK(equivalent(r.net, parse_expr("(a + 1) & a"), 6));
}

TEST_CASE("canonicalization keeps a live input delay") {
  CanonicalResult r = canonicalize(parse_expr("(a + 2) < b"));
  CHECK(format_expr(r.net) == "a + 2 < b");
  CHECK(equivalent(r.net, parse_expr("(a + 2) < b"), 6));

  CanonicalResult single = canonicalize(parse_expr("a < b"));
  CHECK(format_expr(single.net) == "a < b");
}

TEST_CASE("canonicalization preconditions") {
  Network two = read_network("input a\nn0 = min a a\noutput n0\noutput a\n");
  CHECK_THROWS_AS(canonicalize(two), std::invalid_argument);
  // Three origins, each with two live delays: expanded arity 6.
  CHECK_THROWS_AS(canonicalize(parse_expr("(a & (a + 1)) & ((b & (b + 1)) & (c & (c + 1)))")),
                  std::invalid_argument);
}

TEST_CASE("round trip through tabulation and synthesis on random networks") {
  std::vector<std::string> pool = {"a", "b", "c"};
  std::size_t checked = 0, excluded = 0;
  for (std::uint64_t seed = 0; checked < 50 && seed < 400; ++seed) {
    std::vector<std::string> names(pool.begin(), pool.begin() + 1 + seed % 3);
    Network net = random_network(names, 1 + seed % 9, seed);
    SequenceTable table = build_table(net);
    if (!validate_table(table).ok) {
      ++excluded;
      continue;
    }
    Network back = synthesize_canonical(table);
    INFO("seed ", seed, ": ", format_expr(net));
    REQUIRE(back.inputs == net.inputs);
    bool same = true;
    std::string where;
    for_all_bindings(net.inputs, 5, [&](const Binding& b) {
      if (!same) return;
      if (net.evaluate(b) != back.evaluate(b)) {
        same = false;
        std::vector<Time> values;
        for (const std::string& name : net.inputs) values.push_back(b.at(name));
        where = render_binding(net.inputs, values);
      }
    });
    INFO("first mismatch at ", where);
    REQUIRE(same);
    ++checked;
  }
  CHECK(checked == 50);
  MESSAGE("excluded ", excluded, " networks whose tables break the near-end condition");
}

TEST_CASE("table files") {
  SequenceTable tmin = build_table(parse_expr("a & b"));
  CHECK(write_table(tmin) == "vars a b\na<b -> a\na=b -> a\nb<a -> b\n");
  CHECK(read_table(write_table(tmin)) == tmin);

  // Sparse files default missing rows to never; members name the group.
  SequenceTable sparse = read_table("# comment\n\nvars a b\nb<a -> b # trailing\n");
  CHECK(!sparse.rows[0].output);
  CHECK(!sparse.rows[1].output);
  CHECK(sparse.rows[2].output == 0);

  SequenceTable tied = read_table("vars a b\na=b -> b\n");
  CHECK(tied.rows[1].output == 0);

  auto line_of = [](const char* text) {
    try {
      read_table(text);
    } catch (const ParseError& e) {
      return e.position;
    }
    return std::size_t{0};
  };
  CHECK(line_of("a<b -> a\n") == 1);
  CHECK(line_of("vars a b\na<c -> a\n") == 2);
  CHECK(line_of("vars a b\n\na<b -> x\n") == 3);
  CHECK(line_of("vars a b\na<b -> a\na<b -> inf\n") == 3);
  CHECK(line_of("vars a b\na<b a\n") == 2);
  CHECK(line_of("vars a b\na<b -> a b\n") == 2);
  CHECK(line_of("vars a a\n") == 1);
  CHECK(line_of("vars\n") == 1);
  CHECK(line_of("") == 1);
}

TEST_CASE("the shipped example table matches the worked example") {
  SequenceTable table = load_table_file(std::string(ST_DATA_DIR) + "/example.table");
  CHECK(table == example_table());
  Network net = synthesize_canonical(table);
  CHECK(equivalent(net, synthesize_canonical(example_table()), 4));
}
