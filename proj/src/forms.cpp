#include "st/forms.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "st/expr.hpp"

namespace st {
namespace {

std::string join(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

bool valid_var(std::string_view s) {
  if (s.empty() || s == "inf") return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

} // namespace

std::string Sequence::render() const {
  std::vector<std::string> parts;
  for (const auto& g : groups) parts.push_back(join(g, '='));
  return join(parts, '<');
}

Sequence Sequence::parse(std::string_view text) {
  Sequence seq;
  std::set<std::string> seen;
  for (const std::string& gtext : split(text, '<')) {
    std::vector<std::string> members = split(gtext, '=');
    for (const std::string& m : members) {
      if (!valid_var(m)) throw std::invalid_argument("bad variable name '" + m + "'");
      if (!seen.insert(m).second) throw std::invalid_argument("variable '" + m + "' listed twice");
    }
    std::sort(members.begin(), members.end());
    seq.groups.push_back(std::move(members));
  }
  return seq;
}

std::vector<Sequence> enumerate_sequences(const std::vector<std::string>& variables) {
  const std::size_t n = variables.size();
  if (n < 1 || n > 5) throw std::invalid_argument("expected between 1 and 5 variables");
  {
    std::set<std::string> uniq(variables.begin(), variables.end());
    if (uniq.size() != n) throw std::invalid_argument("duplicate variable name");
  }

  std::vector<Sequence> out;
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<std::size_t> assign(n, 0); // variable index -> group index
    for (;;) {
      Sequence seq;
      seq.groups.assign(k, {});
      for (std::size_t i = 0; i < n; ++i) seq.groups[assign[i]].push_back(variables[i]);
      bool surjective = true;
      for (auto& g : seq.groups) {
        if (g.empty()) {
          surjective = false;
          break;
        }
        std::sort(g.begin(), g.end());
      }
      if (surjective) out.push_back(std::move(seq));

      std::size_t i = n;
      while (i > 0 && assign[i - 1] + 1 == k) assign[--i] = 0;
      if (i == 0) break;
      ++assign[i - 1];
    }
  }
  std::sort(out.begin(), out.end(),
            [](const Sequence& a, const Sequence& b) { return a.render() < b.render(); });
  return out;
}

SequenceTable build_table(const Network& net) {
  if (net.outputs.size() != 1)
    throw std::invalid_argument("expected a single-output network");
  if (net.inputs.empty() || net.inputs.size() > 5)
    throw std::invalid_argument("expected between 1 and 5 inputs");
  for (const Node& node : net.nodes)
    if (node.kind == NodeKind::Delay)
      throw std::invalid_argument("expected a delay-free network");

  SequenceTable table;
  table.variables = net.inputs;

  for (const Sequence& seq : enumerate_sequences(table.variables)) {
    // Bind each group to a representative time, evaluate, and identify the
    // output's group. A second, spread-out assignment guards against the
    // output matching a group by coincidence rather than by order.
    std::optional<std::size_t> chosen;
    for (std::uint64_t scale : {std::uint64_t{1}, std::uint64_t{2}}) {
      std::vector<Time> binding(net.inputs.size(), Time::finite(0));
      for (std::size_t g = 0; g < seq.groups.size(); ++g)
        for (const std::string& m : seq.groups[g])
          binding[static_cast<std::size_t>(net.input_slot(m))] = Time::finite(g * scale);
      Time out = net.evaluate(binding).at(0);

      std::optional<std::size_t> found;
      if (out.is_finite()) {
        for (std::size_t g = 0; g < seq.groups.size(); ++g)
          if (out == Time::finite(g * scale)) found = g;
        if (!found)
          throw std::runtime_error("not sequence-determined: output time matches no group on row '" +
                                   seq.render() + "'");
      }
      if (scale == 1)
        chosen = found;
      else if (chosen != found)
        throw std::runtime_error("not sequence-determined: representative assignments disagree on row '" +
                                 seq.render() + "'");
    }
    table.rows.push_back({seq, chosen});
  }
  return table;
}

bool output_near_end(const SequenceRow& row) {
  if (!row.output) return true;
  const std::size_t g = *row.output;
  const std::size_t last = row.seq.groups.size() - 1;
  return g == last || g + 1 == last;
}

CheckReport validate_table(const SequenceTable& table) {
  CheckReport report;
  report.vectors = table.rows.size();
  for (const SequenceRow& row : table.rows) {
    if (output_near_end(row)) continue;
    report.ok = false;
    Counterexample cx;
    cx.detail = "row '" + row.seq.render() + "': output group {" +
                join(row.seq.groups[*row.output], ',') +
                "} is neither last nor next-to-last";
    report.failure = std::move(cx);
    break;
  }
  return report;
}

Implicant minterm_of(const SequenceRow& row) {
  if (!row.output) throw std::invalid_argument("row output is never; no minterm exists");
  const auto& groups = row.seq.groups;
  const std::size_t last = groups.size() - 1;

  Implicant imp;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const auto& members = groups[g];
    if (g < last) {
      // Equality chain walked down onto the representative, then the strict
      // step to the next group's representative.
      for (std::size_t j = members.size(); j-- > 1;)
        imp.terms.push_back({{members[j]}, Rel::Eq, {members[j - 1]}});
      imp.terms.push_back({{members[0]}, Rel::Lt, {groups[g + 1][0]}});
    } else {
      for (std::size_t j = 0; j + 1 < members.size(); ++j)
        imp.terms.push_back({{members[j]}, Rel::Eq, {members[j + 1]}});
    }
  }
  if (*row.output == last && groups[last].size() == 1)
    imp.markers.push_back({groups[last][0]});
  return imp;
}

bool implicant_consistent(const Implicant& imp) {
  // Union operands along equality terms, then look for a directed cycle
  // through at least one strict edge.
  std::map<Operand, std::size_t> index;
  auto id = [&](const Operand& op) {
    auto [it, fresh] = index.emplace(op, index.size());
    (void)fresh;
    return it->second;
  };
  for (const Term& t : imp.terms) {
    id(t.lhs);
    id(t.rhs);
  }

  std::vector<std::size_t> parent(index.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const Term& t : imp.terms)
    if (t.rel == Rel::Eq) parent[find(id(t.lhs))] = find(id(t.rhs));

  const std::size_t n = index.size();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  std::vector<std::pair<std::size_t, std::size_t>> strict;
  for (const Term& t : imp.terms) {
    if (t.rel == Rel::Eq) continue;
    std::size_t u = find(id(t.lhs)), v = find(id(t.rhs));
    reach[u][v] = true;
    if (t.rel == Rel::Lt) {
      if (u == v) return false;
      strict.emplace_back(u, v);
    }
  }
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t u = 0; u < n; ++u)
      if (reach[u][m])
        for (std::size_t v = 0; v < n; ++v)
          if (reach[m][v]) reach[u][v] = true;
  for (auto [u, v] : strict)
    if (reach[v][u]) return false;
  return true;
}

std::vector<Implicant> merge_le(std::vector<Implicant> imps) {
  auto mergeable = [](const Implicant& a, const Implicant& b) -> std::optional<std::size_t> {
    if (a.markers != b.markers || a.terms.size() != b.terms.size()) return std::nullopt;
    std::optional<std::size_t> diff;
    for (std::size_t i = 0; i < a.terms.size(); ++i) {
      const Term& s = a.terms[i];
      const Term& t = b.terms[i];
      if (s == t) continue;
      if (diff) return std::nullopt;
      bool pair = s.lhs == t.lhs && s.rhs == t.rhs &&
                  ((s.rel == Rel::Lt && t.rel == Rel::Eq) ||
                   (s.rel == Rel::Eq && t.rel == Rel::Lt));
      if (!pair) return std::nullopt;
      diff = i;
    }
    return diff;
  };

  bool merged = true;
  while (merged) {
    merged = false;
    for (std::size_t i = 0; i < imps.size() && !merged; ++i) {
      for (std::size_t j = i + 1; j < imps.size() && !merged; ++j) {
        if (auto d = mergeable(imps[i], imps[j])) {
          imps[i].terms[*d].rel = Rel::Le;
          imps.erase(imps.begin() + static_cast<std::ptrdiff_t>(j));
          merged = true;
        }
      }
    }
  }
  return imps;
}

namespace {

Operand resolve_operand(const Operand& op, const DelayAssignment& taps) {
  if (op.k == 0)
    for (const DelayedInput& tap : taps)
      if (tap.name == op.var) return {tap.origin, tap.k};
  throw std::invalid_argument("unknown expanded input '" + op.var +
                              (op.k ? "+" + std::to_string(op.k) : "") + "'");
}

enum class TermFate { Keep, AlwaysTrue, NeverTrue };

TermFate classify(const Term& t) {
  if (t.lhs.var != t.rhs.var) return TermFate::Keep;
  const auto i = t.lhs.k, j = t.rhs.k;
  switch (t.rel) {
    case Rel::Lt: return i < j ? TermFate::AlwaysTrue : TermFate::NeverTrue;
    case Rel::Eq: return i == j ? TermFate::AlwaysTrue : TermFate::NeverTrue;
    case Rel::Le: return i <= j ? TermFate::AlwaysTrue : TermFate::NeverTrue;
  }
  return TermFate::Keep;
}

/// Shared skeleton for the two simplifiers: they differ only in what an
/// always-true term leaves behind.
std::vector<Implicant> simplify_impl(std::vector<Implicant> imps, const DelayAssignment& taps,
                                     bool keep_value) {
  std::vector<Implicant> out;
  for (Implicant& imp : imps) {
    Implicant next;
    bool dead = false;
    for (Term& t : imp.terms) {
      t.lhs = resolve_operand(t.lhs, taps);
      t.rhs = resolve_operand(t.rhs, taps);
      switch (classify(t)) {
        case TermFate::Keep:
          next.terms.push_back(t);
          break;
        case TermFate::AlwaysTrue:
          // Such a term always evaluates to its left operand, so replacing
          // it with the bare-operand marker preserves the value exactly.
          if (keep_value) next.markers.push_back(t.lhs);
          break;
        case TermFate::NeverTrue:
          // The term is never anything but "never", which swamps the max;
          // dropping the implicant leaves the min untouched.
          dead = true;
          break;
      }
      if (dead) break;
    }
    if (dead) continue;
    for (const Operand& m : imp.markers) next.markers.push_back(resolve_operand(m, taps));
    std::sort(next.markers.begin(), next.markers.end());
    next.markers.erase(std::unique(next.markers.begin(), next.markers.end()), next.markers.end());
    out.push_back(std::move(next));
  }
  return out;
}

} // namespace

std::vector<Implicant> simplify_delayed_relations(std::vector<Implicant> imps,
                                                  const DelayAssignment& taps) {
  return simplify_impl(std::move(imps), taps, false);
}

Network synthesize_standard(const std::vector<Implicant>& imps,
                            const std::vector<std::string>& variables) {
  if (variables.empty()) throw std::invalid_argument("expected at least one variable");
  Network net;
  for (const std::string& v : variables) net.add_input(v);

  auto leaf = [&](const Operand& op) {
    if (std::find(variables.begin(), variables.end(), op.var) == variables.end())
      throw std::invalid_argument("operand '" + op.var + "' is not a listed variable");
    return net.add_delay(net.add_input(op.var), op.k);
  };

  constexpr NodeId none = ~NodeId{0};
  NodeId whole = none;
  for (const Implicant& imp : imps) {
    if (!implicant_consistent(imp)) throw std::invalid_argument("inconsistent implicant");
    if (imp.terms.empty() && imp.markers.empty())
      throw std::invalid_argument("empty implicant");
    NodeId clause = none;
    auto add = [&](NodeId node) {
      clause = clause == none ? node : net.add_binary(OpKind::Max, clause, node);
    };
    for (const Term& t : imp.terms) {
      OpKind op = t.rel == Rel::Lt ? OpKind::Lt : t.rel == Rel::Eq ? OpKind::Eq : OpKind::Le;
      add(net.add_binary(op, leaf(t.lhs), leaf(t.rhs)));
    }
    for (const Operand& m : imp.markers) add(leaf(m));
    whole = whole == none ? clause : net.add_binary(OpKind::Min, whole, clause);
  }
  if (whole == none) {
    // No satisfiable pattern: the function is never. A variable compared
    // strictly against itself realizes that constant.
    NodeId v = net.add_input(variables.front());
    whole = net.add_binary(OpKind::Lt, v, v);
  }
  net.add_output(whole);
  return net;
}

Network synthesize_canonical(const SequenceTable& table) {
  CheckReport check = validate_table(table);
  if (!check.ok)
    throw std::runtime_error("table not realizable: " + check.failure->detail);
  std::vector<Implicant> imps;
  for (const SequenceRow& row : table.rows)
    if (row.output) imps.push_back(minterm_of(row));
  return synthesize_standard(imps, table.variables);
}

CanonicalResult canonicalize(const Network& net, std::size_t budget) {
  if (net.outputs.size() != 1)
    throw std::invalid_argument("expected a single-output network");
  Decomposition dec = decompose(net, budget);
  if (dec.taps.size() > 5)
    throw std::invalid_argument("expanded arity exceeds 5 inputs");

  CanonicalResult result;
  result.taps = dec.taps;
  result.table = build_table(dec.residual);

  std::vector<Implicant> imps;
  for (const SequenceRow& row : result.table.rows)
    if (row.output) imps.push_back(minterm_of(row));
  imps = simplify_impl(std::move(imps), dec.taps, true);
  result.net = synthesize_standard(imps, dec.origins);
  return result;
}

SequenceTable read_table(std::string_view text) {
  SequenceTable table;
  std::map<std::string, std::size_t> row_index; // rendering -> rows position
  std::set<std::string> seen;
  bool have_vars = false;

  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& msg) -> void { throw ParseError("line " + std::to_string(lineno) + ": " + msg, lineno); };

  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream probe(line);
    std::string first;
    if (!(probe >> first)) continue;

    if (!have_vars) {
      if (first != "vars") fail("expected a 'vars' line first");
      std::string name;
      while (probe >> name) {
        if (!valid_var(name)) fail("bad variable name '" + name + "'");
        table.variables.push_back(name);
      }
      if (table.variables.empty() || table.variables.size() > 5)
        fail("expected between 1 and 5 variables");
      std::set<std::string> uniq(table.variables.begin(), table.variables.end());
      if (uniq.size() != table.variables.size()) fail("duplicate variable name");
      have_vars = true;
      for (const Sequence& seq : enumerate_sequences(table.variables)) {
        row_index.emplace(seq.render(), table.rows.size());
        table.rows.push_back({seq, std::nullopt});
      }
      continue;
    }

    auto arrow = line.find("->");
    if (arrow == std::string::npos) fail("expected '<sequence> -> <output>'");
    Sequence seq;
    try {
      seq = Sequence::parse(std::string_view(line).substr(0, arrow));
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
    auto it = row_index.find(seq.render());
    if (it == row_index.end()) fail("'" + seq.render() + "' is not a sequence of the declared variables");

    std::istringstream rest(line.substr(arrow + 2));
    std::string out, extra;
    if (!(rest >> out) || (rest >> extra)) fail("expected a single output name");

    if (!seen.insert(seq.render()).second) fail("duplicate row '" + seq.render() + "'");
    SequenceRow& row = table.rows[it->second];
    if (out == "inf") continue; // never is the default
    bool found = false;
    for (std::size_t g = 0; g < seq.groups.size() && !found; ++g)
      for (const std::string& m : seq.groups[g])
        if (m == out) {
          row.output = g;
          found = true;
          break;
        }
    if (!found) fail("output '" + out + "' does not appear in '" + seq.render() + "'");
  }
  if (!have_vars) {
    lineno = 1;
    fail("expected a 'vars' line");
  }
  return table;
}

std::string write_table(const SequenceTable& table) {
  std::string out = "vars";
  for (const std::string& v : table.variables) out += " " + v;
  out += "\n";
  for (const SequenceRow& row : table.rows) {
    out += row.seq.render();
    out += " -> ";
    out += row.output ? row.seq.groups[*row.output][0] : "inf";
    out += "\n";
  }
  return out;
}

SequenceTable load_table_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'", 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  return read_table(buf.str());
}

} // namespace st
