#include "st/tnn.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "st/expr.hpp"

namespace st {

int ResponseProfile::rho(std::uint64_t w, std::uint64_t t) const {
  if (w > max_weight) throw std::invalid_argument("weight exceeds profile range");
  const auto& row = amplitude.at(w);
  return row.at(std::min<std::uint64_t>(t, t_max));
}

StepLists steps_of(const ResponseProfile& profile, std::uint64_t w) {
  StepLists steps;
  for (std::uint64_t t = 0; t <= profile.t_max; ++t) {
    int s = profile.rho(w, t) - (t ? profile.rho(w, t - 1) : 0);
    for (; s > 0; --s) steps.ups.push_back(t);
    for (; s < 0; ++s) steps.downs.push_back(t);
  }
  return steps;
}

namespace {

/// Batcher's bitonic stages over existing wires; returns them ascending.
std::vector<NodeId> sort_wires(Network& net, std::vector<NodeId> wires) {
  const std::size_t n = wires.size();
  for (std::size_t k = 2; k <= n; k <<= 1) {
    for (std::size_t j = k >> 1; j > 0; j >>= 1) {
      for (std::size_t i = 0; i < n; ++i) {
        std::size_t l = i ^ j;
        if (l <= i) continue;
        bool ascending = (i & k) == 0;
        NodeId low = net.add_binary(OpKind::Min, wires[i], wires[l]);
        NodeId high = net.add_binary(OpKind::Max, wires[i], wires[l]);
        wires[i] = ascending ? low : high;
        wires[l] = ascending ? high : low;
      }
    }
  }
  return wires;
}

std::size_t sorter_width(std::size_t count) {
  std::size_t w = 2;
  while (w < count) w <<= 1;
  return w;
}

} // namespace

Network build_sorter(std::size_t n) {
  if (n < 2 || n > 32 || (n & (n - 1)) != 0)
    throw std::invalid_argument("sorter width must be a power of two between 2 and 32");
  Network net;
  std::vector<NodeId> wires;
  for (std::size_t i = 0; i < n; ++i) wires.push_back(net.add_input("x" + std::to_string(i + 1)));
  for (NodeId id : sort_wires(net, std::move(wires))) net.add_output(id);
  return net;
}

Network build_neuron_steps(const std::vector<StepLists>& steps, std::uint64_t threshold,
                           bool* constant_silent) {
  if (steps.empty()) throw std::invalid_argument("expected at least one input");
  if (threshold == 0) throw std::invalid_argument("threshold must be at least 1");

  Network net;
  std::vector<NodeId> xs;
  for (std::size_t i = 0; i < steps.size(); ++i)
    xs.push_back(net.add_input("x" + std::to_string(i + 1)));
  NodeId pad = net.add_input(neuron_pad_input);

  std::vector<NodeId> up_wires, down_wires;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    for (std::uint64_t t : steps[i].ups) up_wires.push_back(net.add_delay(xs[i], t));
    for (std::uint64_t t : steps[i].downs) down_wires.push_back(net.add_delay(xs[i], t));
  }
  const std::size_t total_up = up_wires.size();
  const std::size_t total_down = down_wires.size();
  if (sorter_width(total_up) > 32 || sorter_width(total_down) > 32)
    throw std::invalid_argument("step fanout exceeds the sorter width limit of 32");

  auto sorted = [&](std::vector<NodeId> wires) {
    while (wires.size() < sorter_width(wires.size())) wires.push_back(pad);
    return sort_wires(net, std::move(wires));
  };
  std::vector<NodeId> ups_sorted = total_up ? sorted(std::move(up_wires)) : std::vector<NodeId>{};
  std::vector<NodeId> downs_sorted =
      total_down ? sorted(std::move(down_wires)) : std::vector<NodeId>{};

  // The output fires with the first up step whose rank runs `threshold`
  // ahead of the down steps: candidate i pairs the (threshold+i)-th up
  // against the (i+1)-th down, with missing ranks standing in as "never".
  constexpr NodeId none = ~NodeId{0};
  NodeId out = none;
  for (std::size_t i = 0; i <= total_down && i + threshold <= total_up; ++i) {
    NodeId u = ups_sorted[threshold + i - 1];
    NodeId d = i < total_down ? downs_sorted[i] : pad;
    NodeId cand = net.add_binary(OpKind::Lt, u, d);
    out = out == none ? cand : net.add_binary(OpKind::Min, out, cand);
  }
  if (constant_silent) *constant_silent = out == none;
  if (out == none) out = net.add_binary(OpKind::Lt, pad, pad);
  net.add_output(out);
  return net;
}

Network build_neuron(const NeuronSpec& spec, bool* constant_silent) {
  if (spec.weights.empty()) throw std::invalid_argument("expected at least one input");
  std::vector<StepLists> steps;
  for (std::uint64_t w : spec.weights) steps.push_back(steps_of(spec.profile, w));
  return build_neuron_steps(steps, spec.threshold, constant_silent);
}

Time neuron_oracle(const std::vector<Time>& spikes, const NeuronSpec& spec) {
  if (spikes.size() != spec.weights.size())
    throw std::invalid_argument("spike count does not match weight count");
  if (spec.threshold == 0) throw std::invalid_argument("threshold must be at least 1");

  std::uint64_t last = 0;
  bool any = false;
  for (Time x : spikes) {
    if (!x.is_finite()) continue;
    any = true;
    last = std::max(last, x.value());
  }
  if (!any) return Time::infinity();

  for (std::uint64_t t = 0; t <= last + spec.profile.t_max; ++t) {
    long long potential = 0;
    for (std::size_t i = 0; i < spikes.size(); ++i) {
      if (!spikes[i].is_finite() || t < spikes[i].value()) continue;
      potential += spec.profile.rho(spec.weights[i], t - spikes[i].value());
    }
    if (potential >= static_cast<long long>(spec.threshold)) return Time::finite(t);
  }
  return Time::infinity();
}

Network microweight_gate() {
  Network net;
  NodeId x = net.add_input("x");
  NodeId m = net.add_input("m");
  net.add_output(net.add_binary(OpKind::Lt, x, m));
  return net;
}

Synapse build_synapse(const ResponseProfile& profile) {
  if (profile.max_weight == 0) throw std::invalid_argument("profile has no components");
  for (std::uint64_t t = 0; t <= profile.t_max; ++t)
    if (profile.rho(0, t) != 0)
      throw std::invalid_argument("non-monotone decomposition: row 0 must be zero");

  Synapse syn;
  Network& net = syn.net;
  NodeId x = net.add_input("x");
  std::vector<NodeId> gates;
  for (std::uint64_t j = 1; j <= profile.max_weight; ++j) {
    NodeId mu = net.add_input("mu" + std::to_string(j));
    gates.push_back(net.add_binary(OpKind::Lt, x, mu));
  }

  std::vector<NodeId> up_wires, down_wires;
  for (std::uint64_t j = 1; j <= profile.max_weight; ++j) {
    int prev = 0;
    for (std::uint64_t t = 0; t <= profile.t_max; ++t) {
      int level = profile.rho(j, t) - profile.rho(j - 1, t);
      if (level < 0 || level > 1)
        throw std::invalid_argument("non-monotone decomposition: component " + std::to_string(j) +
                                    " is not unit-amplitude");
      if (level > prev) up_wires.push_back(net.add_delay(gates[j - 1], t));
      if (level < prev) down_wires.push_back(net.add_delay(gates[j - 1], t));
      prev = level;
    }
  }
  for (NodeId id : up_wires) net.add_output(id);
  for (NodeId id : down_wires) net.add_output(id);
  syn.ups = up_wires.size();
  syn.downs = down_wires.size();
  return syn;
}

std::vector<int> thermometer(std::uint64_t w, std::uint64_t max_weight) {
  if (w > max_weight) throw std::invalid_argument("weight exceeds profile range");
  std::vector<int> bits(max_weight, 0);
  for (std::uint64_t j = 0; j < w; ++j) bits[j] = 1;
  return bits;
}

Network build_wta(std::size_t n) {
  if (n < 2) throw std::invalid_argument("expected at least two lines");
  Network net;
  std::vector<NodeId> xs;
  for (std::size_t i = 0; i < n; ++i) xs.push_back(net.add_input("x" + std::to_string(i + 1)));

  // Balanced min tree for the earliest spike.
  std::vector<NodeId> level = xs;
  while (level.size() > 1) {
    std::vector<NodeId> next;
    for (std::size_t i = 0; i + 1 < level.size(); i += 2)
      next.push_back(net.add_binary(OpKind::Min, level[i], level[i + 1]));
    if (level.size() % 2) next.push_back(level.back());
    level = std::move(next);
  }
  NodeId fence = net.add_delay(level[0], 1);
  for (NodeId x : xs) net.add_output(net.add_binary(OpKind::Lt, x, fence));
  return net;
}

namespace {

template <typename T>
T parse_number(const std::string& token, std::size_t lineno, const char* what) {
  T value{};
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size())
    throw ParseError("line " + std::to_string(lineno) + ": bad " + what + " '" + token + "'",
                     lineno);
  return value;
}

} // namespace

ResponseProfile read_profile(std::string_view text) {
  ResponseProfile profile;
  bool have_header = false;
  std::set<std::pair<std::uint64_t, std::uint64_t>> seen;

  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& msg) -> void {
    throw ParseError("line " + std::to_string(lineno) + ": " + msg, lineno);
  };

  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<std::string> tok;
    for (std::string t; fields >> t;) tok.push_back(t);
    if (tok.empty()) continue;

    if (!have_header) {
      if (tok.size() != 4 || tok[0] != "W" || tok[2] != "TMAX")
        fail("expected header 'W <max weight> TMAX <horizon>'");
      profile.max_weight = parse_number<std::uint64_t>(tok[1], lineno, "weight");
      profile.t_max = parse_number<std::uint64_t>(tok[3], lineno, "horizon");
      if (profile.max_weight < 1 || profile.max_weight > 64) fail("max weight out of range 1..64");
      if (profile.t_max > 4096) fail("horizon out of range 0..4096");
      profile.amplitude.assign(profile.max_weight + 1,
                               std::vector<int>(profile.t_max + 1, 0));
      have_header = true;
      continue;
    }

    if (tok.size() != 4 || tok[0] != "rho") fail("expected 'rho <weight> <time> <amplitude>'");
    auto w = parse_number<std::uint64_t>(tok[1], lineno, "weight");
    auto t = parse_number<std::uint64_t>(tok[2], lineno, "time");
    auto amp = parse_number<int>(tok[3], lineno, "amplitude");
    if (w > profile.max_weight) fail("weight exceeds the declared maximum");
    if (t > profile.t_max) fail("time exceeds the declared horizon");
    if (!seen.emplace(w, t).second)
      fail("duplicate entry for weight " + tok[1] + " time " + tok[2]);
    profile.amplitude[w][t] = amp;
  }
  if (!have_header) {
    lineno = 1;
    fail("expected header 'W <max weight> TMAX <horizon>'");
  }
  return profile;
}

ResponseProfile load_profile_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'", 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  return read_profile(buf.str());
}

} // namespace st
