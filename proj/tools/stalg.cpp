// Command-line driver for the spike-time algebra workbench.
//
// Exit codes: 0 = success / property holds, 1 = property violated or
// unsatisfiable (verdict on stdout), 2 = usage, parse, or file error
// (message on stderr).

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "st/allen.hpp"
#include "st/expr.hpp"
#include "st/forms.hpp"
#include "st/netfile.hpp"
#include "st/network.hpp"
#include "st/ops.hpp"
#include "st/tnn.hpp"
#include "st/verify.hpp"

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == sep) {
      out.push_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

// "--bind a=0 --bind b=1" and "--bind a=0,b=1" are both accepted.
std::vector<std::pair<std::string, std::string>> bind_entries(
    const std::vector<std::string>& binds) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const std::string& chunk : binds) {
    for (const std::string& item : split(chunk, ',')) {
      std::size_t eq = item.find('=');
      if (eq == std::string::npos || eq == 0)
        throw std::invalid_argument("bad binding '" + item + "', expected name=time");
      out.emplace_back(item.substr(0, eq), item.substr(eq + 1));
    }
  }
  return out;
}

st::Binding bind_times(const std::vector<std::string>& binds) {
  st::Binding b;
  for (const auto& [name, value] : bind_entries(binds)) {
    if (!b.emplace(name, st::parse_time(value)).second)
      throw std::invalid_argument("duplicate binding for '" + name + "'");
  }
  return b;
}

std::vector<st::Time> parse_times(const std::string& list) {
  std::vector<st::Time> out;
  for (const std::string& item : split(list, ',')) out.push_back(st::parse_time(item));
  return out;
}

std::uint64_t parse_count(const std::string& text) {
  st::Time t = st::parse_time(text);
  if (!t.is_finite()) throw std::invalid_argument("expected a number, got '" + text + "'");
  return t.value();
}

std::string render_times(const std::vector<st::Time>& times) {
  std::string out;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (i) out += ',';
    out += st::to_string(times[i]);
  }
  return out;
}

void print_report(const std::string& label, const st::CheckReport& report) {
  if (report.ok) {
    std::cout << label << " PASS (" << report.vectors << " vectors)\n";
    return;
  }
  const st::Counterexample& cx = *report.failure;
  std::cout << label << " FAIL at " << st::render_binding(cx.names, cx.values) << ": expected "
            << cx.expected << ", got " << cx.actual;
  if (!cx.detail.empty()) std::cout << " (" << cx.detail << ")";
  std::cout << "\n";
}

st::Network load_subject(const std::string& expr, const std::string& net_file) {
  if (expr.empty() == net_file.empty())
    throw std::invalid_argument("give exactly one of EXPR or --net FILE");
  return expr.empty() ? st::load_network_file(net_file) : st::parse_expr(expr);
}

int run_eval(const std::string& expr, const std::vector<std::string>& binds) {
  st::Network net = st::parse_expr(expr);
  st::Binding b = bind_times(binds);
  for (const auto& [name, value] : b) {
    (void)value;
    if (net.input_slot(name) < 0)
      throw std::invalid_argument("binding for unknown input '" + name + "'");
  }
  std::cout << net.evaluate_one(b) << "\n";
  return 0;
}

int run_check(const std::string& expr, const std::string& net_file, std::int64_t horizon,
              std::uint64_t seed) {
  st::Network net = load_subject(expr, net_file);
  st::Horizon h = st::default_horizon(net.arity());
  if (horizon >= 0) h.T = static_cast<std::uint64_t>(horizon);
  h.seed = seed;
  st::CheckReport causality = st::check_causality(net, h);
  st::CheckReport invariance = st::check_invariance(net, h);
  print_report("causality", causality);
  print_report("invariance", invariance);
  return causality.ok && invariance.ok ? 0 : 1;
}

int run_identities(std::uint64_t horizon, const std::string& id, std::uint64_t seed) {
  std::vector<st::IdentityResult> results = st::run_identities({horizon, 100000, seed}, id);
  if (results.empty()) throw std::invalid_argument("no identity with id '" + id + "'");
  int rc = 0;
  for (const st::IdentityResult& r : results) {
    if (r.skipped) {
      std::cout << r.id << " SKIP (" << r.note << ")\n";
      continue;
    }
    if (r.holds) {
      std::cout << r.id << " PASS (" << r.vectors << " vectors)\n";
      continue;
    }
    const st::Counterexample& cx = *r.counterexample;
    std::cout << r.id << " FAIL" << (r.report_only ? " (known non-identity)" : "") << " at "
              << st::render_binding(cx.names, cx.values) << ": lhs " << cx.expected << ", rhs "
              << cx.actual << "\n";
    if (!r.report_only) rc = 1;
  }
  return rc;
}

int run_completeness(std::uint64_t horizon) {
  const st::OpKind derived[] = {st::OpKind::Ge, st::OpKind::Le,   st::OpKind::Max,
                                st::OpKind::Eq, st::OpKind::Gt,   st::OpKind::Ne,
                                st::OpKind::XMin, st::OpKind::XMax};
  std::vector<st::Time> domain;
  for (std::uint64_t t = 0; t <= horizon; ++t) domain.push_back(st::Time::finite(t));
  domain.push_back(st::Time::infinity());

  int rc = 0;
  for (st::OpKind op : derived) {
    st::Network net = st::minimal_basis_network(op);
    std::size_t vectors = 0;
    bool ok = true;
    for (st::Time a : domain) {
      for (st::Time b : domain) {
        ++vectors;
        std::vector<st::Time> in{a, b};
        st::Time got = net.evaluate(in).at(0);
        st::Time want = st::binary(op, a, b);
        if (got != want) {
          std::cout << st::op_name(op) << " FAIL at x=" << a << ",y=" << b << ": expected "
                    << want << ", got " << got << "\n";
          ok = false;
          rc = 1;
          break;
        }
      }
      if (!ok) break;
    }
    if (ok) std::cout << st::op_name(op) << " PASS (" << vectors << " vectors)\n";
  }
  return rc;
}

int run_table(const std::string& expr) {
  std::cout << st::write_table(st::build_table(st::parse_expr(expr)));
  return 0;
}

int run_canon(const std::string& expr, const std::string& net_file) {
  st::Network net = load_subject(expr, net_file);
  std::cout << st::format_expr(st::canonicalize(net).net) << "\n";
  return 0;
}

int run_synth(const std::string& table_file) {
  st::SequenceTable table = st::load_table_file(table_file);
  std::cout << st::format_expr(st::synthesize_canonical(table)) << "\n";
  return 0;
}

int run_sort(const std::string& spikes) {
  std::vector<st::Time> in = parse_times(spikes);
  st::Network sorter = st::build_sorter(in.size());
  std::cout << render_times(sorter.evaluate(in)) << "\n";
  return 0;
}

int run_neuron(const std::string& profile_file, const std::string& weights,
               std::uint64_t threshold, const std::string& spikes, bool oracle) {
  st::NeuronSpec spec;
  spec.profile = st::load_profile_file(profile_file);
  for (const std::string& w : split(weights, ',')) spec.weights.push_back(parse_count(w));
  spec.threshold = threshold;
  std::vector<st::Time> in = parse_times(spikes);
  if (oracle) {
    std::cout << st::neuron_oracle(in, spec) << "\n";
    return 0;
  }
  bool silent = false;
  st::Network net = st::build_neuron(spec, &silent);
  if (silent) std::cerr << "note: threshold exceeds the reachable step count; output is never\n";
  in.push_back(st::Time::infinity()); // the reserved pad input
  std::cout << net.evaluate(in).at(0) << "\n";
  return 0;
}

int run_wta(const std::string& spikes) {
  std::vector<st::Time> in = parse_times(spikes);
  st::Network net = st::build_wta(in.size());
  std::cout << render_times(net.evaluate(in)) << "\n";
  return 0;
}

st::IntervalEvents parse_interval(const std::string& text) {
  std::vector<st::Time> times = parse_times(text);
  if (times.size() != 2)
    throw std::invalid_argument("expected start,finish but got '" + text + "'");
  return {times[0], times[1]};
}

int run_allen_eval(const std::string& relation, const std::string& x, const std::string& y) {
  st::Time result = st::eval_intervals(st::allen_relation_from_name(relation),
                                       parse_interval(x), parse_interval(y));
  std::cout << result << "\n";
  return result.is_finite() ? 0 : 1;
}

int run_allen_expr(const std::string& expr, const std::vector<std::string>& binds) {
  st::Network net = st::parse_expr(expr);
  st::Binding b = st::parse_event_bindings(bind_entries(binds));
  st::Time result = net.evaluate_one(b);
  std::cout << result << "\n";
  return result.is_finite() ? 0 : 1;
}

int run_allen_implied(const std::string& expr, const std::string& pair, std::uint64_t horizon,
                      std::uint64_t seed) {
  std::vector<std::string> events = split(pair, ',');
  if (events.size() != 2) throw std::invalid_argument("expected --pair u,v");
  st::Network net = st::parse_expr(expr);
  std::set<char> classes = st::strongest_implied(net, {horizon, 100000, seed}, events[0],
                                                 events[1], st::interval_constraints(net.inputs));
  if (classes.empty()) {
    std::cout << "unsat\n";
    return 1;
  }
  std::string out;
  for (char c : classes) {
    if (!out.empty()) out += ',';
    out += c;
  }
  std::cout << out << "\n";
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"spike-time algebra workbench", "stalg"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "stalg 0.1.0");

  std::uint64_t seed = 0;
  int jobs = 1;
  app.add_option("--seed", seed, "seed for sampled checks")->capture_default_str();
  app.add_option("--jobs", jobs, "checker worker threads; never affects output")
      ->capture_default_str();

  int rc = 0;

  std::string eval_expr;
  std::vector<std::string> eval_binds;
  CLI::App* eval = app.add_subcommand("eval", "evaluate an expression under a binding");
  eval->add_option("EXPR", eval_expr, "expression")->required();
  eval->add_option("--bind", eval_binds, "input binding name=time");
  eval->callback([&] { rc = run_eval(eval_expr, eval_binds); });

  std::string check_expr, check_net;
  std::int64_t check_horizon = -1;
  CLI::App* check = app.add_subcommand("check", "check causality and shift invariance");
  check->add_option("EXPR", check_expr, "expression");
  check->add_option("--net", check_net, "network file");
  check->add_option("--horizon", check_horizon, "test window 0..T plus never");
  check->callback([&] { rc = run_check(check_expr, check_net, check_horizon, seed); });

  std::uint64_t ident_horizon = 5;
  std::string ident_id;
  CLI::App* ident = app.add_subcommand("identities", "verify the algebraic identity catalogue");
  ident->add_option("--horizon", ident_horizon, "test window")->capture_default_str();
  ident->add_option("--id", ident_id, "check a single catalogue entry");
  ident->callback([&] { rc = run_identities(ident_horizon, ident_id, seed); });

  std::uint64_t compl_horizon = 6;
  CLI::App* compl_ = app.add_subcommand(
      "completeness", "rebuild every derived operator from delay, min, and strictly-before");
  compl_->add_option("--horizon", compl_horizon, "test window")->capture_default_str();
  compl_->callback([&] { rc = run_completeness(compl_horizon); });

  std::string table_expr;
  CLI::App* table = app.add_subcommand("table", "print the sequence table of an expression");
  table->add_option("EXPR", table_expr, "expression")->required();
  table->callback([&] { rc = run_table(table_expr); });

  std::string canon_expr, canon_net;
  CLI::App* canon = app.add_subcommand("canon", "canonical form of a network");
  canon->add_option("EXPR", canon_expr, "expression");
  canon->add_option("--net", canon_net, "network file");
  canon->callback([&] { rc = run_canon(canon_expr, canon_net); });

  std::string synth_file;
  CLI::App* synth = app.add_subcommand("synth", "synthesize a network from a sequence table");
  synth->add_option("TABLE_FILE", synth_file, "sequence table file")->required();
  synth->callback([&] { rc = run_synth(synth_file); });

  std::string sort_spikes;
  CLI::App* sort = app.add_subcommand("sort", "run spikes through a sorting network");
  sort->add_option("--spikes", sort_spikes, "comma-separated times")->required();
  sort->callback([&] { rc = run_sort(sort_spikes); });

  CLI::App* tnn = app.add_subcommand("tnn", "temporal neuron building blocks");
  tnn->require_subcommand(1);

  std::string neuron_profile, neuron_weights, neuron_spikes;
  std::uint64_t neuron_threshold = 1;
  bool neuron_oracle_flag = false;
  CLI::App* neuron = tnn->add_subcommand("neuron", "spike response neuron output time");
  neuron->add_option("--profile", neuron_profile, "response profile file")->required();
  neuron->add_option("--weights", neuron_weights, "comma-separated synapse weights")->required();
  neuron->add_option("--threshold", neuron_threshold, "firing threshold")->capture_default_str();
  neuron->add_option("--spikes", neuron_spikes, "comma-separated input spike times")->required();
  neuron->add_flag("--oracle", neuron_oracle_flag, "use the direct potential scan instead");
  neuron->callback([&] {
    rc = run_neuron(neuron_profile, neuron_weights, neuron_threshold, neuron_spikes,
                    neuron_oracle_flag);
  });

  std::string wta_spikes;
  CLI::App* wta = tnn->add_subcommand("wta", "winner-take-all over spike times");
  wta->add_option("--spikes", wta_spikes, "comma-separated times")->required();
  wta->callback([&] { rc = run_wta(wta_spikes); });

  CLI::App* allen = app.add_subcommand("allen", "interval relations over event times");
  allen->require_subcommand(1);

  std::string aeval_rel, aeval_x, aeval_y;
  CLI::App* aeval = allen->add_subcommand("eval", "evaluate one interval relation");
  aeval->add_option("--relation", aeval_rel, "relation name, e.g. before or met-by")->required();
  aeval->add_option("--x", aeval_x, "interval X as start,finish")->required();
  aeval->add_option("--y", aeval_y, "interval Y as start,finish")->required();
  aeval->callback([&] { rc = run_allen_eval(aeval_rel, aeval_x, aeval_y); });

  std::string aexpr_expr;
  std::vector<std::string> aexpr_binds;
  CLI::App* aexpr = allen->add_subcommand("expr", "evaluate an event expression in realtime");
  aexpr->add_option("EXPR", aexpr_expr, "expression over event names")->required();
  aexpr->add_option("--bind", aexpr_binds, "event binding name=time or name=H:MM");
  aexpr->callback([&] { rc = run_allen_expr(aexpr_expr, aexpr_binds); });

  std::string aimp_expr, aimp_pair;
  std::uint64_t aimp_horizon = 5;
  CLI::App* aimp = allen->add_subcommand("implied", "strongest implied order between two events");
  aimp->add_option("EXPR", aimp_expr, "expression over event names")->required();
  aimp->add_option("--pair", aimp_pair, "event pair u,v")->required();
  aimp->add_option("--horizon", aimp_horizon, "search window")->capture_default_str();
  aimp->callback([&] { rc = run_allen_implied(aimp_expr, aimp_pair, aimp_horizon, seed); });

  // Let --seed / --jobs appear after the subcommand name as well.
  auto all = [](CLI::App*) { return true; };
  for (CLI::App* sub : app.get_subcommands(all)) {
    sub->fallthrough();
    for (CLI::App* nested : sub->get_subcommands(all)) nested->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const st::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    std::cout << e.what() << "\n";
    return 1;
  }
  return rc;
}
