#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "st/network.hpp"

namespace st {

/// Test window for property checks: inputs range over {0..T} plus infinity.
/// When the full grid exceeds a million vectors the checkers switch to
/// seeded random sampling of `sample_budget` vectors.
struct Horizon {
  std::uint64_t T = 6;
  std::uint64_t sample_budget = 100000;
  std::uint64_t seed = 0;
};

/// T = 6 up to three inputs, 4 beyond that; keeps exhaustive runs affordable.
Horizon default_horizon(std::size_t arity);

struct Counterexample {
  std::vector<std::string> names;
  std::vector<Time> values;
  Time expected;
  Time actual;
  std::string detail;
};

struct CheckReport {
  bool ok = true;
  std::size_t vectors = 0;
  std::optional<Counterexample> failure;
};

/// "a=0,b=2,c=inf"
std::string render_binding(const std::vector<std::string>& names,
                           const std::vector<Time>& values);

/// A function given by an explicit table instead of a network. The table is
/// the whole domain: checks never leave it, and a causality probe that would
/// need a vector outside it is itself reported as a failure.
struct FunctionSpec {
  std::vector<std::string> inputs;
  std::map<std::vector<Time>, Time> table;
};

/// An output must not depend on inputs later than itself: replacing any
/// strictly later input with "never" must leave the output unchanged, a
/// finite output must not precede every input, and all-never input must map
/// to never.
CheckReport check_causality(const Network& net, const Horizon& h);
CheckReport check_causality(const FunctionSpec& fn, const Horizon& h);

/// Shifting all inputs one tick later must shift every output one tick
/// later. For table functions, shifted vectors outside the table are skipped.
CheckReport check_invariance(const Network& net, const Horizon& h);
CheckReport check_invariance(const FunctionSpec& fn, const Horizon& h);

/// Causality and invariance together.
CheckReport check_spacetime(const Network& net, const Horizon& h);
CheckReport check_spacetime(const FunctionSpec& fn, const Horizon& h);

/// One algebraic identity: two expressions expected to agree everywhere.
/// Entries 1-4 involve the lattice bounds, which the expression grammar has
/// no literals for, so those are given as single-variable closures instead.
struct IdentitySpec {
  std::string id;
  std::string lhs;
  std::string rhs;
  bool report_only = false; // known non-identities: verified to fail, not required to hold
  bool skipped = false;
  std::string note;
  std::function<Time(Time)> lhs1; // set iff rhs1 is set; overrides expression parsing
  std::function<Time(Time)> rhs1;
};

const std::vector<IdentitySpec>& identity_specs();

struct IdentityResult {
  std::string id;
  bool holds = false;
  bool report_only = false;
  bool skipped = false;
  std::string note;
  std::size_t vectors = 0;
  std::optional<Counterexample> counterexample; // expected = left side
};

/// Exhaustively compare both sides over the union of their variables, first
/// variable slowest, 0..T then infinity; the first disagreement is kept.
IdentityResult check_identity(const IdentitySpec& spec, const Horizon& h);

/// Run the whole catalogue, or just the entry with the given id.
std::vector<IdentityResult> run_identities(const Horizon& h, const std::string& only_id = "");

/// Rebuild any primitive out of min and lt alone (plus the inputs x, y).
Network minimal_basis_network(OpKind op);

/// Seeded random feedforward network over the given inputs: n_binary random
/// binary nodes, sprinkled with delays up to max_delay when it is nonzero.
/// Unreachable nodes are pruned; the last node is the output.
Network random_network(const std::vector<std::string>& inputs, std::size_t n_binary,
                       std::uint64_t seed, std::uint64_t max_delay = 0);

} // namespace st
