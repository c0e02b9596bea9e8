#include "st/verify.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "st/expr.hpp"
#include "st/ops.hpp"

namespace st {
namespace {

const Time never = Time::infinity();

void validate(const Horizon& h) {
  if (h.T < 2) throw std::invalid_argument("st::Horizon: T must be at least 2");
}

std::vector<Time> domain_values(std::uint64_t T) {
  std::vector<Time> d;
  for (std::uint64_t v = 0; v <= T; ++v) d.push_back(Time::finite(v));
  d.push_back(never);
  return d;
}

bool grid_fits(std::size_t q, std::uint64_t T, std::uint64_t limit = 1000000) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < q; ++i) {
    if (total > limit / (T + 2)) return false;
    total *= T + 2;
  }
  return total <= limit;
}

/// Visit input vectors: the whole grid when it is small enough (first
/// coordinate slowest, 0..T then inf), seeded random samples otherwise.
/// fn returns false to stop early.
template <class Fn>
void enumerate_vectors(std::size_t q, const Horizon& h, Fn&& fn) {
  auto dom = domain_values(h.T);
  if (grid_fits(q, h.T)) {
    std::vector<std::size_t> idx(q, 0);
    std::vector<Time> x(q, Time::finite(0));
    while (true) {
      for (std::size_t i = 0; i < q; ++i) x[i] = dom[idx[i]];
      if (!fn(x)) return;
      std::size_t i = q;
      while (i > 0 && ++idx[i - 1] == dom.size()) idx[--i] = 0;
      if (i == 0) return;
    }
  }
  std::mt19937_64 rng(h.seed);
  std::vector<Time> x(q, Time::finite(0));
  for (std::uint64_t n = 0; n < h.sample_budget; ++n) {
    for (std::size_t i = 0; i < q; ++i) x[i] = dom[rng() % dom.size()];
    if (!fn(x)) return;
  }
}

Counterexample make_cex(const std::vector<std::string>& names, const std::vector<Time>& x,
                        Time expected, Time actual, std::string detail) {
  return Counterexample{names, x, expected, actual, std::move(detail)};
}

std::string output_tag(const Network& net, std::size_t o) {
  return net.outputs.size() > 1 ? " (output " + std::to_string(o) + ")" : "";
}

} // namespace

Horizon default_horizon(std::size_t arity) {
  Horizon h;
  h.T = arity <= 3 ? 6 : 4;
  return h;
}

std::string render_binding(const std::vector<std::string>& names,
                           const std::vector<Time>& values) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += ',';
    out += names[i];
    out += '=';
    out += to_string(values[i]);
  }
  return out;
}

CheckReport check_causality(const Network& net, const Horizon& h) {
  validate(h);
  CheckReport rep;
  std::vector<Time> probe;
  enumerate_vectors(net.arity(), h, [&](const std::vector<Time>& x) {
    ++rep.vectors;
    auto out = net.evaluate(std::span<const Time>(x));
    bool all_never = std::all_of(x.begin(), x.end(), [](Time t) { return t.is_infinite(); });
    Time lo = never;
    for (Time t : x) lo = binary(OpKind::Min, lo, t);
    for (std::size_t o = 0; o < out.size(); ++o) {
      Time z = out[o];
      if (all_never && z != never) {
        rep.ok = false;
        rep.failure = make_cex(net.inputs, x, never, z,
                               "input with no events produced an event" + output_tag(net, o));
        return false;
      }
      if (z.is_finite() && z < lo) {
        rep.ok = false;
        rep.failure = make_cex(net.inputs, x, lo, z,
                               "output precedes every input" + output_tag(net, o));
        return false;
      }
      for (std::size_t j = 0; j < x.size(); ++j) {
        if (!(x[j] > z) || x[j].is_infinite()) continue;
        probe = x;
        probe[j] = never;
        Time z2 = net.evaluate(std::span<const Time>(probe))[o];
        if (z2 != z) {
          rep.ok = false;
          rep.failure = make_cex(net.inputs, x, z, z2,
                                 "output depends on input '" + net.inputs[j] +
                                     "', which fires after it" + output_tag(net, o));
          return false;
        }
      }
    }
    return true;
  });
  return rep;
}

CheckReport check_invariance(const Network& net, const Horizon& h) {
  validate(h);
  CheckReport rep;
  std::vector<Time> shifted;
  enumerate_vectors(net.arity(), h, [&](const std::vector<Time>& x) {
    ++rep.vectors;
    auto out = net.evaluate(std::span<const Time>(x));
    shifted = x;
    for (Time& t : shifted) t = delay(t, 1);
    auto out2 = net.evaluate(std::span<const Time>(shifted));
    for (std::size_t o = 0; o < out.size(); ++o) {
      if (out2[o] != delay(out[o], 1)) {
        rep.ok = false;
        rep.failure = make_cex(net.inputs, x, delay(out[o], 1), out2[o],
                               "shifting all inputs one tick later does not shift the output" +
                                   output_tag(net, o));
        return false;
      }
    }
    return true;
  });
  return rep;
}

CheckReport check_spacetime(const Network& net, const Horizon& h) {
  CheckReport rep = check_causality(net, h);
  if (!rep.ok) return rep;
  CheckReport inv = check_invariance(net, h);
  inv.vectors += rep.vectors;
  return inv;
}

namespace {

void validate_spec(const FunctionSpec& fn) {
  for (const auto& [x, z] : fn.table) {
    (void)z;
    if (x.size() != fn.inputs.size())
      throw std::invalid_argument("st::FunctionSpec: table key arity mismatch");
  }
}

} // namespace

CheckReport check_causality(const FunctionSpec& fn, const Horizon& h) {
  validate(h);
  validate_spec(fn);
  CheckReport rep;
  for (const auto& [x, z] : fn.table) {
    ++rep.vectors;
    bool all_never = std::all_of(x.begin(), x.end(), [](Time t) { return t.is_infinite(); });
    if (all_never && z != never) {
      rep.ok = false;
      rep.failure = make_cex(fn.inputs, x, never, z, "input with no events produced an event");
      return rep;
    }
    Time lo = never;
    for (Time t : x) lo = binary(OpKind::Min, lo, t);
    if (z.is_finite() && z < lo) {
      rep.ok = false;
      rep.failure = make_cex(fn.inputs, x, lo, z, "output precedes every input");
      return rep;
    }
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (!(x[j] > z) || x[j].is_infinite()) continue;
      std::vector<Time> probe = x;
      probe[j] = never;
      auto it = fn.table.find(probe);
      if (it == fn.table.end()) {
        rep.ok = false;
        rep.failure = make_cex(fn.inputs, x, z, z,
                               "causality probe (input '" + fn.inputs[j] +
                                   "' set to inf) is missing from the table");
        return rep;
      }
      if (it->second != z) {
        rep.ok = false;
        rep.failure = make_cex(fn.inputs, x, z, it->second,
                               "output depends on input '" + fn.inputs[j] +
                                   "', which fires after it");
        return rep;
      }
    }
  }
  return rep;
}

CheckReport check_invariance(const FunctionSpec& fn, const Horizon& h) {
  validate(h);
  validate_spec(fn);
  CheckReport rep;
  for (const auto& [x, z] : fn.table) {
    ++rep.vectors;
    std::vector<Time> shifted = x;
    for (Time& t : shifted) t = delay(t, 1);
    auto it = fn.table.find(shifted);
    if (it == fn.table.end()) continue; // shifted vector leaves the table: nothing to compare
    if (it->second != delay(z, 1)) {
      rep.ok = false;
      rep.failure = make_cex(fn.inputs, x, delay(z, 1), it->second,
                             "shifting all inputs one tick later does not shift the output");
      return rep;
    }
  }
  return rep;
}

CheckReport check_spacetime(const FunctionSpec& fn, const Horizon& h) {
  CheckReport rep = check_causality(fn, h);
  if (!rep.ok) return rep;
  CheckReport inv = check_invariance(fn, h);
  inv.vectors += rep.vectors;
  return inv;
}

IdentityResult check_identity(const IdentitySpec& spec, const Horizon& h) {
  validate(h);
  IdentityResult r;
  r.id = spec.id;
  r.report_only = spec.report_only;
  r.skipped = spec.skipped;
  r.note = spec.note;
  if (spec.skipped) return r;

  if (spec.lhs1) {
    for (Time a : domain_values(h.T)) {
      ++r.vectors;
      Time l = spec.lhs1(a);
      Time rr = spec.rhs1(a);
      if (l != rr) {
        r.counterexample = make_cex({"a"}, {a}, l, rr, "");
        return r;
      }
    }
    r.holds = true;
    return r;
  }

  Network lhs = parse_expr(spec.lhs);
  Network rhs = parse_expr(spec.rhs);
  std::vector<std::string> vars = lhs.inputs;
  for (const std::string& v : rhs.inputs)
    if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);

  auto dom = domain_values(h.T);
  std::vector<std::size_t> idx(vars.size(), 0);
  while (true) {
    Binding b;
    std::vector<Time> x(vars.size());
    for (std::size_t i = 0; i < vars.size(); ++i) {
      x[i] = dom[idx[i]];
      b[vars[i]] = x[i];
    }
    ++r.vectors;
    Time l = lhs.evaluate_one(b);
    Time rr = rhs.evaluate_one(b);
    if (l != rr) {
      r.counterexample = make_cex(vars, x, l, rr, "");
      return r;
    }
    std::size_t i = vars.size();
    while (i > 0 && ++idx[i - 1] == dom.size()) idx[--i] = 0;
    if (i == 0) break;
  }
  r.holds = true;
  return r;
}

const std::vector<IdentitySpec>& identity_specs() {
  static const std::vector<IdentitySpec> specs = [] {
    std::vector<IdentitySpec> v;
    auto add = [&](std::string id, std::string lhs, std::string rhs, bool report = false) {
      IdentitySpec s;
      s.id = std::move(id);
      s.lhs = std::move(lhs);
      s.rhs = std::move(rhs);
      s.report_only = report;
      v.push_back(std::move(s));
    };
    auto add1 = [&](std::string id, std::string lhs, std::string rhs,
                    std::function<Time(Time)> lf, std::function<Time(Time)> rf) {
      IdentitySpec s;
      s.id = std::move(id);
      s.lhs = std::move(lhs);
      s.rhs = std::move(rhs);
      s.lhs1 = std::move(lf);
      s.rhs1 = std::move(rf);
      v.push_back(std::move(s));
    };

    // bound laws need the lattice constants, which expressions cannot name
    add1("1", "a | inf", "inf", [](Time a) { return binary(OpKind::Max, a, never); },
         [](Time) { return never; });
    add1("2", "a & 0", "0", [](Time a) { return binary(OpKind::Min, a, Time::finite(0)); },
         [](Time) { return Time::finite(0); });
    add1("3", "a | 0", "a", [](Time a) { return binary(OpKind::Max, a, Time::finite(0)); },
         [](Time a) { return a; });
    add1("4", "a & inf", "a", [](Time a) { return binary(OpKind::Min, a, never); },
         [](Time a) { return a; });

    add("5", "a & a", "a");
    add("6", "a | a", "a");
    add("7", "a & b", "b & a");
    add("8", "a | b", "b | a");
    add("9", "(a & b) & c", "a & (b & c)");
    add("10", "(a | b) | c", "a | (b | c)");
    add("11", "a & (b | c)", "(a & b) | (a & c)");
    add("12", "a | (b & c)", "(a | b) & (a | c)");
    add("13", "a & (a | b)", "a");
    add("14", "a | (a & b)", "a");
    add("15", "a & (a + 1)", "a");
    add("16", "a | (a + 1)", "a + 1");
    add("17", "(a | b) + 1", "(a + 1) | (b + 1)");
    add("18", "(a & b) + 1", "(a + 1) & (b + 1)");
    add("19", "(a < b) + 1", "(a + 1) < (b + 1)");
    add("20", "a >= b", "a < (a < b)");
    add("21", "a <= b", "a < (b < a)");
    add("22", "a | b", "(a >= b) & (b >= a)");
    add("23", "a > b", "(b < a) | a");
    add("24", "a == b", "(a <= b) | (b <= a)");
    add("25", "a != b", "(a < b) & (a > b)");
    add("26", "xmin(a, b)", "(a < b) & (b < a)");
    add("27", "xmax(a, b)", "(a > b) & (b > a)");
    add("28", "a >= b", "(b <= a) | a");
    add("29", "a <= b", "(a < b) & (a == b)");
    add("30", "a >= b", "(a > b) & (a == b)");
    add("31", "a < (b & c)", "(a < b) | (a < c)");
    add("32", "a < (b | c)", "(a < b) & (a < c)");
    add("33", "(a & b) < c", "(a < c) & (b < c)");
    add("34", "(a | b) < c", "(a < c) | (b < c)");
    add("35", "(a == b) < c", "(a < c) & (a == b)", true);
    add("36", "a < (b == c)", "(a < b) & (b == c)", true);
    add("37", "(a == b) == c", "(a == c) & (b == c)", true);
    add("38", "a == (b & c)", "((a == b) | (b < c)) & ((a == c) | (c < b))", true);
    add("39", "a == (b | c)", "((a == b) | (c < b)) & ((a == c) | (b < c))", true);
    add("40", "(a < b) < c", "(a < b) | (a < c)");

    {
      IdentitySpec s;
      s.id = "41a";
      s.lhs = "a < (b < c)";
      s.rhs = "";
      s.skipped = true;
      s.note = "undefined-operator";
      v.push_back(std::move(s));
    }
    add("41b", "a < (b < c)", "((a < b) & ((c <= b) | b)) | a", true);
    add("41c", "a < (b < c)", "((a < b) & (c <= b)) | (a & b) | a", true);
    add("41d", "a < (b < c)", "((a < b) & (c < b) & (c == b)) | a", true);

    const OpKind rels[] = {OpKind::Lt, OpKind::Le, OpKind::Gt,
                           OpKind::Ge, OpKind::Eq, OpKind::Ne};
    for (OpKind r1 : rels)
      for (OpKind r2 : rels) {
        std::string t1(op_token(r1)), t2(op_token(r2));
        add("42:" + std::string(op_name(r1)) + "," + std::string(op_name(r2)),
            "(a " + t1 + " b) " + t2 + " c", "(a " + t1 + " b) | (a " + t2 + " c)");
      }
    return v;
  }();
  return specs;
}

std::vector<IdentityResult> run_identities(const Horizon& h, const std::string& only_id) {
  std::vector<IdentityResult> out;
  for (const IdentitySpec& spec : identity_specs()) {
    if (!only_id.empty() && spec.id != only_id) continue;
    out.push_back(check_identity(spec, h));
  }
  return out;
}

Network minimal_basis_network(OpKind op) {
  Network net;
  NodeId x = net.add_input("x");
  NodeId y = net.add_input("y");
  auto lt = [&](NodeId u, NodeId w) { return net.add_binary(OpKind::Lt, u, w); };
  auto mn = [&](NodeId u, NodeId w) { return net.add_binary(OpKind::Min, u, w); };
  auto ge = [&](NodeId u, NodeId w) { return lt(u, lt(u, w)); };
  auto le = [&](NodeId u, NodeId w) { return lt(u, lt(w, u)); };
  auto mx = [&](NodeId u, NodeId w) { return mn(ge(u, w), ge(w, u)); };
  auto gt = [&](NodeId u, NodeId w) { return mx(lt(w, u), u); };

  NodeId out = 0;
  switch (op) {
    case OpKind::Min: out = mn(x, y); break;
    case OpKind::Lt: out = lt(x, y); break;
    case OpKind::Le: out = le(x, y); break;
    case OpKind::Ge: out = ge(x, y); break;
    case OpKind::Max: out = mx(x, y); break;
    case OpKind::Gt: out = gt(x, y); break;
    case OpKind::Eq: out = mx(le(x, y), le(y, x)); break;
    case OpKind::Ne: out = mn(lt(x, y), gt(x, y)); break;
    case OpKind::XMin: out = mn(lt(x, y), lt(y, x)); break;
    case OpKind::XMax: out = mn(gt(x, y), gt(y, x)); break;
  }
  net.add_output(out);
  return net;
}

Network random_network(const std::vector<std::string>& inputs, std::size_t n_binary,
                       std::uint64_t seed, std::uint64_t max_delay) {
  std::mt19937_64 rng(seed);
  Network net;
  std::vector<NodeId> pool;
  pool.reserve(inputs.size() + n_binary);
  for (const std::string& name : inputs) pool.push_back(net.add_input(name));
  for (std::size_t i = 0; i < n_binary; ++i) {
    if (max_delay > 0 && rng() % 5 == 0) {
      NodeId src = pool[rng() % pool.size()];
      pool.push_back(net.add_delay(src, 1 + rng() % max_delay));
    } else {
      OpKind op = all_op_kinds[rng() % 10];
      NodeId lhs = pool[rng() % pool.size()];
      NodeId rhs = pool[rng() % pool.size()];
      pool.push_back(net.add_binary(op, lhs, rhs));
    }
  }
  net.add_output(pool.back());
  return net.pruned();
}

} // namespace st
