#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "st/ops.hpp"
#include "st/time.hpp"

namespace st {

using NodeId = std::uint32_t;

enum class NodeKind { Input, Delay, Binary };

struct Node {
  NodeKind kind;
  // Input
  std::uint32_t slot = 0; // index into Network::inputs
  // Delay
  NodeId src = 0;
  std::uint64_t k = 0;
  // Binary
  OpKind op = OpKind::Min;
  NodeId lhs = 0;
  NodeId rhs = 0;
};

/// Named input values for evaluation. Extra names are ignored; a missing
/// name referenced by the network is an error.
using Binding = std::map<std::string, Time>;

struct EvalStats {
  std::size_t node_evals = 0;
};

/// A feedforward operator network. Nodes may only reference earlier nodes,
/// so the node vector is always a topological order and the graph is acyclic
/// by construction. Fanout (sharing) is allowed.
class Network {
public:
  std::vector<Node> nodes;
  std::vector<std::string> inputs; // distinct names, slot order
  std::vector<NodeId> outputs;

  NodeId add_input(const std::string& name);
  /// k = 0 collapses to the source node; delays are not auto-merged otherwise.
  NodeId add_delay(NodeId src, std::uint64_t k);
  NodeId add_binary(OpKind op, NodeId lhs, NodeId rhs);
  void add_output(NodeId id);

  std::size_t arity() const { return inputs.size(); }

  /// Slot index for an input name, or -1 if absent.
  int input_slot(const std::string& name) const;

  /// Evaluate with input values given in slot order. Computes every node once.
  std::vector<Time> evaluate(std::span<const Time> slots, EvalStats* stats = nullptr) const;
  std::vector<Time> evaluate(const Binding& binding, EvalStats* stats = nullptr) const;

  /// Single-output convenience.
  Time evaluate_one(const Binding& binding) const;

  /// Drop nodes unreachable from the outputs, preserving relative order.
  Network pruned() const;

private:
  NodeId check_ref(NodeId id) const;
};

/// Tree-shape equality up to node ids: inputs match by name, delays by k,
/// binaries by kind and operand subtrees. Shared subgraphs compare as their
/// unfoldings.
bool structural_equal(const Network& a, const Network& b);

} // namespace st
