#include "st/network.hpp"

#include <stdexcept>

namespace st {

NodeId Network::check_ref(NodeId id) const {
  if (id >= nodes.size()) throw std::logic_error("st::Network: operand references a later node");
  return id;
}

NodeId Network::add_input(const std::string& name) {
  for (NodeId i = 0; i < nodes.size(); ++i)
    if (nodes[i].kind == NodeKind::Input && inputs[nodes[i].slot] == name) return i;
  Node n;
  n.kind = NodeKind::Input;
  n.slot = std::uint32_t(inputs.size());
  inputs.push_back(name);
  nodes.push_back(n);
  return NodeId(nodes.size() - 1);
}

NodeId Network::add_delay(NodeId src, std::uint64_t k) {
  check_ref(src);
  if (k == 0) return src;
  Node n;
  n.kind = NodeKind::Delay;
  n.src = src;
  n.k = k;
  nodes.push_back(n);
  return NodeId(nodes.size() - 1);
}

NodeId Network::add_binary(OpKind op, NodeId lhs, NodeId rhs) {
  check_ref(lhs);
  check_ref(rhs);
  Node n;
  n.kind = NodeKind::Binary;
  n.op = op;
  n.lhs = lhs;
  n.rhs = rhs;
  nodes.push_back(n);
  return NodeId(nodes.size() - 1);
}

void Network::add_output(NodeId id) { outputs.push_back(check_ref(id)); }

int Network::input_slot(const std::string& name) const {
  for (std::size_t i = 0; i < inputs.size(); ++i)
    if (inputs[i] == name) return int(i);
  return -1;
}

std::vector<Time> Network::evaluate(std::span<const Time> slots, EvalStats* stats) const {
  if (slots.size() != inputs.size())
    throw std::invalid_argument("st::Network::evaluate: wrong number of input values");
  std::vector<Time> values(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Node& n = nodes[i];
    switch (n.kind) {
      case NodeKind::Input: values[i] = slots[n.slot]; break;
      case NodeKind::Delay: values[i] = delay(values[n.src], n.k); break;
      case NodeKind::Binary: values[i] = binary(n.op, values[n.lhs], values[n.rhs]); break;
    }
    if (stats) ++stats->node_evals;
  }
  std::vector<Time> out;
  out.reserve(outputs.size());
  for (NodeId id : outputs) out.push_back(values[id]);
  return out;
}

std::vector<Time> Network::evaluate(const Binding& binding, EvalStats* stats) const {
  std::vector<Time> slots(inputs.size());
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    auto it = binding.find(inputs[i]);
    if (it == binding.end())
      throw std::invalid_argument("st::Network::evaluate: unbound input '" + inputs[i] + "'");
    slots[i] = it->second;
  }
  return evaluate(std::span<const Time>(slots), stats);
}

Time Network::evaluate_one(const Binding& binding) const {
  if (outputs.size() != 1)
    throw std::invalid_argument("st::Network::evaluate_one: network is not single-output");
  return evaluate(binding)[0];
}

Network Network::pruned() const {
  std::vector<bool> live(nodes.size(), false);
  std::vector<NodeId> stack(outputs.begin(), outputs.end());
  while (!stack.empty()) {
    NodeId id = stack.back();
    stack.pop_back();
    if (live[id]) continue;
    live[id] = true;
    const Node& n = nodes[id];
    if (n.kind == NodeKind::Delay) stack.push_back(n.src);
    if (n.kind == NodeKind::Binary) {
      stack.push_back(n.lhs);
      stack.push_back(n.rhs);
    }
  }
  Network out;
  std::vector<NodeId> remap(nodes.size(), 0);
  for (NodeId id = 0; id < nodes.size(); ++id) {
    if (!live[id]) continue;
    const Node& n = nodes[id];
    switch (n.kind) {
      case NodeKind::Input: remap[id] = out.add_input(inputs[n.slot]); break;
      case NodeKind::Delay: remap[id] = out.add_delay(remap[n.src], n.k); break;
      case NodeKind::Binary: remap[id] = out.add_binary(n.op, remap[n.lhs], remap[n.rhs]); break;
    }
  }
  for (NodeId id : outputs) out.add_output(remap[id]);
  return out;
}

namespace {

bool tree_equal(const Network& a, NodeId ia, const Network& b, NodeId ib) {
  const Node& na = a.nodes[ia];
  const Node& nb = b.nodes[ib];
  if (na.kind != nb.kind) return false;
  switch (na.kind) {
    case NodeKind::Input: return a.inputs[na.slot] == b.inputs[nb.slot];
    case NodeKind::Delay: return na.k == nb.k && tree_equal(a, na.src, b, nb.src);
    case NodeKind::Binary:
      return na.op == nb.op && tree_equal(a, na.lhs, b, nb.lhs) && tree_equal(a, na.rhs, b, nb.rhs);
  }
  return false;
}

} // namespace

bool structural_equal(const Network& a, const Network& b) {
  if (a.outputs.size() != b.outputs.size()) return false;
  for (std::size_t i = 0; i < a.outputs.size(); ++i)
    if (!tree_equal(a, a.outputs[i], b, b.outputs[i])) return false;
  return true;
}

} // namespace st
