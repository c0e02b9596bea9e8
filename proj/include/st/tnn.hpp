#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "st/network.hpp"
#include "st/time.hpp"

namespace st {

/// Tabulated synaptic response: amplitude contributed to the body potential
/// by a spike of weight w, t ticks after arrival. Constant beyond t_max.
struct ResponseProfile {
  std::uint64_t max_weight = 0;
  std::uint64_t t_max = 0;
  std::vector<std::vector<int>> amplitude; // [w][t], (max_weight+1) x (t_max+1)

  int rho(std::uint64_t w, std::uint64_t t) const;
};

/// A response row reduced to its unit steps: times at which the potential
/// contribution rises or falls by one. Both lists ascending.
struct StepLists {
  std::vector<std::uint64_t> ups;
  std::vector<std::uint64_t> downs;
  bool operator==(const StepLists&) const = default;
};

StepLists steps_of(const ResponseProfile& profile, std::uint64_t w);

struct NeuronSpec {
  ResponseProfile profile;
  std::vector<std::uint64_t> weights; // one per input
  std::uint64_t threshold = 1;
};

/// Batcher sorting network over n inputs (n in {2,4,8,16,32}): pure min/max
/// comparator pairs, outputs ascending with "never" sorting last.
Network build_sorter(std::size_t n);

/// Spiking-neuron body: each input fans out through the delays of its
/// weight's step lists into an up-sorter and a down-sorter; the output fires
/// with the first time the number of up steps exceeds the down steps by the
/// threshold. The network carries one extra reserved input (named "pad",
/// always last) that callers must bind to "never"; it feeds sorter padding
/// and out-of-range ranks. If the threshold exceeds the total up-step count
/// the output is constantly "never" and *constant_silent is set.
Network build_neuron(const NeuronSpec& spec, bool* constant_silent = nullptr);
Network build_neuron_steps(const std::vector<StepLists>& steps, std::uint64_t threshold,
                           bool* constant_silent = nullptr);
inline constexpr const char* neuron_pad_input = "pad";

/// Independent brute-force check: accumulate every spike's tabulated
/// response into a potential trajectory and report the first time it meets
/// the threshold. All contributions at a given tick land before the test.
Time neuron_oracle(const std::vector<Time>& spikes, const NeuronSpec& spec);

/// Two-input fragment Lt(x, m): binding m to "never" passes x through,
/// binding m to 0 blocks it. The micro-weight bit is resolved to that
/// binding at evaluation time.
Network microweight_gate();

/// Synapse with per-component micro-weight gates: component j of the profile
/// (row j minus row j-1, which must be a unit-amplitude row) contributes its
/// steps only when input mu_j is bound to "never". Inputs are x then
/// mu_1..mu_W; outputs are the up-step wires followed by the down-step
/// wires.
struct Synapse {
  Network net;
  std::size_t ups = 0;
  std::size_t downs = 0;
};

Synapse build_synapse(const ResponseProfile& profile);

/// Micro-weight vector for an integer weight: w ones then zeros.
std::vector<int> thermometer(std::uint64_t w, std::uint64_t max_weight);

/// Winner-take-all over n >= 2 lines: z_i repeats x_i iff x_i is the
/// earliest spike (ties all pass), otherwise never.
Network build_wta(std::size_t n);

/// Profile file: header `W <w> TMAX <t>`, lines `rho <w> <t> <amplitude>`,
/// `#` comments; unspecified entries are zero.
ResponseProfile read_profile(std::string_view text);
ResponseProfile load_profile_file(const std::string& path);

} // namespace st
