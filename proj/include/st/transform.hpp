#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "st/network.hpp"

namespace st {

/// Expand shared interior nodes into per-use copies so every non-input node
/// feeds exactly one consumer. Inputs stay shared. Throws std::runtime_error
/// if the expanded network would exceed `budget` nodes.
Network defanout(const Network& net, std::size_t budget = 100000);

/// Move every delay to sit directly on an input, merging consecutive delays.
/// Sound because all primitive operators commute with +1 (and hence +k).
Network push_delays(const Network& net);

/// One delayed input tap of a decomposition: the original input `origin`
/// observed `k` ticks late, exposed under `name` in the residual network.
struct DelayedInput {
  std::string origin;
  std::uint64_t k = 0;
  std::string name;
};

using DelayAssignment = std::vector<DelayedInput>;

/// Split a network into a delay-free residual over expanded inputs plus the
/// assignment saying which (origin, k) tap each expanded input denotes.
/// Taps are ordered by original input position, then by k ascending; a tap
/// with k = 0 keeps the origin's name.
struct Decomposition {
  Network residual;
  DelayAssignment taps;
  std::vector<std::string> origins; // original inputs, in order
};

Decomposition decompose(const Network& net, std::size_t budget = 100000);

/// Rebuild a network over the original inputs by re-inserting each tap's
/// delay in front of the residual. Evaluates identically to the source of
/// the decomposition.
Network substitute_delays(const Decomposition& dec);

} // namespace st
