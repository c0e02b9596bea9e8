#include "st/allen.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace st {

const char* allen_relation_name(AllenRelation rel) {
  switch (rel) {
    case AllenRelation::Before: return "before";
    case AllenRelation::After: return "after";
    case AllenRelation::Meets: return "meets";
    case AllenRelation::MetBy: return "met-by";
    case AllenRelation::Overlaps: return "overlaps";
    case AllenRelation::OverlappedBy: return "overlapped-by";
    case AllenRelation::Starts: return "starts";
    case AllenRelation::StartedBy: return "started-by";
    case AllenRelation::During: return "during";
    case AllenRelation::Contains: return "contains";
    case AllenRelation::Finishes: return "finishes";
    case AllenRelation::FinishedBy: return "finished-by";
    case AllenRelation::Equals: return "equals";
  }
  return "";
}

AllenRelation allen_relation_from_name(const std::string& name) {
  for (AllenRelation rel : all_allen_relations)
    if (name == allen_relation_name(rel)) return rel;
  throw std::invalid_argument("unknown relation '" + name + "'");
}

Network encode(AllenRelation rel) {
  Network net;
  NodeId xs = net.add_input("Xs");
  NodeId xf = net.add_input("Xf");
  NodeId ys = net.add_input("Ys");
  NodeId yf = net.add_input("Yf");

  // The inverse of a relation is the relation with the intervals swapped.
  switch (rel) {
    case AllenRelation::After: std::swap(xs, ys); std::swap(xf, yf); rel = AllenRelation::Before; break;
    case AllenRelation::MetBy: std::swap(xs, ys); std::swap(xf, yf); rel = AllenRelation::Meets; break;
    case AllenRelation::OverlappedBy: std::swap(xs, ys); std::swap(xf, yf); rel = AllenRelation::Overlaps; break;
    case AllenRelation::StartedBy: std::swap(xs, ys); std::swap(xf, yf); rel = AllenRelation::Starts; break;
    case AllenRelation::Contains: std::swap(xs, ys); std::swap(xf, yf); rel = AllenRelation::During; break;
    case AllenRelation::FinishedBy: std::swap(xs, ys); std::swap(xf, yf); rel = AllenRelation::Finishes; break;
    default: break;
  }

  auto lt = [&](NodeId a, NodeId b) { return net.add_binary(OpKind::Lt, a, b); };
  auto eq = [&](NodeId a, NodeId b) { return net.add_binary(OpKind::Eq, a, b); };
  auto both = [&](NodeId a, NodeId b) { return net.add_binary(OpKind::Max, a, b); };

  NodeId out = 0;
  switch (rel) {
    case AllenRelation::Before: out = lt(xf, ys); break;
    case AllenRelation::Meets: out = eq(xf, ys); break;
    case AllenRelation::Overlaps: out = both(both(lt(xs, ys), lt(ys, xf)), lt(xf, yf)); break;
    case AllenRelation::Starts: out = both(eq(xs, ys), lt(xf, yf)); break;
    case AllenRelation::During: out = both(lt(ys, xs), lt(xf, yf)); break;
    case AllenRelation::Finishes: out = both(lt(ys, xs), eq(xf, yf)); break;
    case AllenRelation::Equals: out = both(eq(xs, ys), eq(xf, yf)); break;
    default: break; // inverses already rewritten
  }
  net.add_output(out);
  return net;
}

Time eval_intervals(AllenRelation rel, IntervalEvents x, IntervalEvents y) {
  for (const IntervalEvents& iv : {x, y})
    if (iv.s.is_finite() && iv.f.is_finite() && iv.s >= iv.f)
      throw std::invalid_argument("degenerate interval: start must precede finish");
  Binding b{{"Xs", x.s}, {"Xf", x.f}, {"Ys", y.s}, {"Yf", y.f}};
  return encode(rel).evaluate(b).at(0);
}

std::vector<std::pair<std::string, std::string>> interval_constraints(
    const std::vector<std::string>& names) {
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const std::string& name : names) {
    if (name.empty() || name.back() != 's') continue;
    std::string finish = name.substr(0, name.size() - 1) + "f";
    if (std::find(names.begin(), names.end(), finish) != names.end())
      pairs.emplace_back(name, finish);
  }
  return pairs;
}

namespace {

/// Enumerate bindings over {0..T, never} in lexicographic order (first
/// input varies slowest, never sorts last), skipping those that violate a
/// start<finish constraint, until fn returns true.
void enumerate(const Network& net, const Horizon& h,
               const std::vector<std::pair<std::string, std::string>>& constraints,
               const std::function<bool(const Binding&)>& fn) {
  if (net.outputs.size() != 1) throw std::invalid_argument("expected a single-output network");
  if (net.arity() > 6) throw std::invalid_argument("expected at most 6 inputs");
  for (const auto& [s, f] : constraints) {
    if (net.input_slot(s) < 0) throw std::invalid_argument("unknown event '" + s + "'");
    if (net.input_slot(f) < 0) throw std::invalid_argument("unknown event '" + f + "'");
  }

  std::vector<Time> domain;
  for (std::uint64_t v = 0; v <= h.T; ++v) domain.push_back(Time::finite(v));
  domain.push_back(Time::infinity());

  const std::size_t q = net.arity();
  std::vector<std::size_t> idx(q, 0);
  for (;;) {
    Binding b;
    for (std::size_t i = 0; i < q; ++i) b[net.inputs[i]] = domain[idx[i]];
    bool valid = true;
    for (const auto& [s, f] : constraints) {
      // Strict in the full order: a never-started interval cannot finish,
      // and a never-occurring one is outside the search space.
      if (!(b.at(s) < b.at(f))) {
        valid = false;
        break;
      }
    }
    if (valid && fn(b)) return;
    std::size_t i = q;
    while (i > 0 && ++idx[i - 1] == domain.size()) idx[--i] = 0;
    if (i == 0) return;
  }
}

} // namespace

std::optional<Binding> satisfiable(
    const Network& net, const Horizon& h,
    const std::vector<std::pair<std::string, std::string>>& constraints) {
  std::optional<Binding> witness;
  enumerate(net, h, constraints, [&](const Binding& b) {
    if (net.evaluate(b).at(0).is_infinite()) return false;
    witness = b;
    return true;
  });
  return witness;
}

std::set<char> strongest_implied(
    const Network& net, const Horizon& h, const std::string& u, const std::string& v,
    const std::vector<std::pair<std::string, std::string>>& constraints) {
  if (net.input_slot(u) < 0) throw std::invalid_argument("unknown event '" + u + "'");
  if (net.input_slot(v) < 0) throw std::invalid_argument("unknown event '" + v + "'");

  std::set<char> classes;
  enumerate(net, h, constraints, [&](const Binding& b) {
    if (net.evaluate(b).at(0).is_infinite()) return false;
    Time a = b.at(u), c = b.at(v);
    classes.insert(a < c ? '<' : a == c ? '=' : '>');
    return classes.size() == 3;
  });
  return classes;
}

namespace {

std::uint64_t parse_clock(const std::string& text) {
  auto colon = text.find(':');
  std::string hours = text.substr(0, colon);
  std::string minutes = text.substr(colon + 1);
  std::uint64_t h = 0, m = 0;
  auto all = [](const std::string& s, std::uint64_t& out) {
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && p == s.data() + s.size();
  };
  if (hours.empty() || minutes.size() != 2 || !all(hours, h) || !all(minutes, m) || m > 59)
    throw std::invalid_argument("bad clock reading '" + text + "'");
  return h * 60 + m;
}

} // namespace

Binding parse_event_bindings(const std::vector<std::pair<std::string, std::string>>& entries) {
  bool clock_mode = false;
  for (const auto& [name, value] : entries)
    if (value.find(':') != std::string::npos) clock_mode = true;

  Binding b;
  if (!clock_mode) {
    for (const auto& [name, value] : entries) {
      if (b.count(name)) throw std::invalid_argument("event '" + name + "' bound twice");
      b[name] = parse_time(value);
    }
    return b;
  }

  std::map<std::string, std::uint64_t> minutes;
  std::uint64_t earliest = ~std::uint64_t{0};
  for (const auto& [name, value] : entries) {
    if (value.find(':') == std::string::npos)
      throw std::invalid_argument("cannot mix clock readings with plain times");
    if (minutes.count(name)) throw std::invalid_argument("event '" + name + "' bound twice");
    minutes[name] = parse_clock(value);
    earliest = std::min(earliest, minutes[name]);
  }
  for (const auto& [name, m] : minutes) b[name] = Time::finite(m - earliest);
  return b;
}

} // namespace st
