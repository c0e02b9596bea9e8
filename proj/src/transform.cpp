#include "st/transform.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>

namespace st {
namespace {

class Defanouter {
public:
  Defanouter(const Network& src, std::size_t budget) : src(src), budget(budget) {
    for (std::size_t s = 0; s < src.arity(); ++s) out.add_input(src.inputs[s]);
  }

  Network run() {
    for (NodeId o : src.outputs) out.add_output(clone(o));
    return std::move(out);
  }

private:
  NodeId clone(NodeId id) {
    const Node& n = src.nodes[id];
    NodeId made = 0;
    switch (n.kind) {
      case NodeKind::Input: return out.add_input(src.inputs[n.slot]);
      case NodeKind::Delay: made = out.add_delay(clone(n.src), n.k); break;
      case NodeKind::Binary: {
        NodeId l = clone(n.lhs);
        NodeId r = clone(n.rhs);
        made = out.add_binary(n.op, l, r);
        break;
      }
    }
    if (out.nodes.size() > budget)
      throw std::runtime_error("fan-out expansion exceeds " + std::to_string(budget) +
                               " nodes");
    return made;
  }

  const Network& src;
  std::size_t budget;
  Network out;
};

class DelayPusher {
public:
  explicit DelayPusher(const Network& src) : src(src) {
    for (std::size_t s = 0; s < src.arity(); ++s) out.add_input(src.inputs[s]);
  }

  Network run() {
    for (NodeId o : src.outputs) out.add_output(build(o, 0));
    return std::move(out);
  }

private:
  NodeId build(NodeId id, std::uint64_t pending) {
    const Node& n = src.nodes[id];
    switch (n.kind) {
      case NodeKind::Input:
        return out.add_delay(out.add_input(src.inputs[n.slot]), pending);
      case NodeKind::Delay: return build(n.src, pending + n.k);
      case NodeKind::Binary: {
        NodeId l = build(n.lhs, pending);
        NodeId r = build(n.rhs, pending);
        return out.add_binary(n.op, l, r);
      }
    }
    throw std::logic_error("unreachable");
  }

  const Network& src;
  Network out;
};

} // namespace

Network defanout(const Network& net, std::size_t budget) {
  return Defanouter(net, budget).run();
}

Network push_delays(const Network& net) { return DelayPusher(net).run(); }

Decomposition decompose(const Network& net, std::size_t budget) {
  Network flat = push_delays(defanout(net, budget));

  // Leaves of the flat network are inputs or single delays over inputs.
  auto leaf_tap = [&](NodeId id) -> std::pair<std::size_t, std::uint64_t> {
    const Node& n = flat.nodes[id];
    if (n.kind == NodeKind::Input) return {n.slot, 0};
    return {flat.nodes[n.src].slot, n.k};
  };
  auto is_leaf = [&](NodeId id) {
    return flat.nodes[id].kind != NodeKind::Binary;
  };

  std::set<std::pair<std::size_t, std::uint64_t>> pairs;
  for (const Node& n : flat.nodes) {
    if (n.kind != NodeKind::Binary) continue;
    if (is_leaf(n.lhs)) pairs.insert(leaf_tap(n.lhs));
    if (is_leaf(n.rhs)) pairs.insert(leaf_tap(n.rhs));
  }
  for (NodeId o : flat.outputs)
    if (is_leaf(o)) pairs.insert(leaf_tap(o));

  Decomposition dec;
  std::set<std::string> taken;
  for (std::size_t s = 0; s < flat.arity(); ++s) {
    dec.origins.push_back(flat.inputs[s]);
    taken.insert(flat.inputs[s]);
  }
  std::map<std::pair<std::size_t, std::uint64_t>, std::size_t> tap_slot;
  for (const auto& [slot, k] : pairs) {
    DelayedInput tap;
    tap.origin = flat.inputs[slot];
    tap.k = k;
    tap.name = k == 0 ? tap.origin : tap.origin + "_d" + std::to_string(k);
    if (k != 0)
      while (taken.count(tap.name)) tap.name += '_';
    taken.insert(tap.name);
    tap_slot.emplace(std::make_pair(slot, k), dec.taps.size());
    dec.taps.push_back(std::move(tap));
  }

  std::vector<NodeId> tap_input;
  for (const DelayedInput& tap : dec.taps)
    tap_input.push_back(dec.residual.add_input(tap.name));

  auto rebuild = [&](auto&& self, NodeId id) -> NodeId {
    if (is_leaf(id)) return tap_input[tap_slot.at(leaf_tap(id))];
    const Node& n = flat.nodes[id];
    NodeId l = self(self, n.lhs);
    NodeId r = self(self, n.rhs);
    return dec.residual.add_binary(n.op, l, r);
  };
  for (NodeId o : flat.outputs) dec.residual.add_output(rebuild(rebuild, o));
  return dec;
}

Network substitute_delays(const Decomposition& dec) {
  Network out;
  std::map<std::string, NodeId> origin_id;
  for (const std::string& name : dec.origins) origin_id.emplace(name, out.add_input(name));

  std::vector<NodeId> tap_node;
  for (const DelayedInput& tap : dec.taps)
    tap_node.push_back(out.add_delay(origin_id.at(tap.origin), tap.k));

  std::vector<NodeId> remap(dec.residual.nodes.size());
  for (NodeId i = 0; i < dec.residual.nodes.size(); ++i) {
    const Node& n = dec.residual.nodes[i];
    switch (n.kind) {
      case NodeKind::Input: remap[i] = tap_node[n.slot]; break;
      case NodeKind::Delay: remap[i] = out.add_delay(remap[n.src], n.k); break;
      case NodeKind::Binary: remap[i] = out.add_binary(n.op, remap[n.lhs], remap[n.rhs]); break;
    }
  }
  for (NodeId o : dec.residual.outputs) out.add_output(remap[o]);
  return out;
}

} // namespace st
