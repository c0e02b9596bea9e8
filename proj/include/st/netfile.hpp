#pragma once

#include <string>
#include <string_view>

#include "st/network.hpp"

namespace st {

/// Parse the line-oriented network format:
///
///   # comment
///   input a
///   n0 = delay a 2
///   n1 = lt n0 b
///   output n1
///
/// Every operand must already be defined (file order is a topological order).
/// Throws ParseError with the 1-based line number on malformed input.
Network read_network(std::string_view text);

/// Inverse of read_network; node ids are regenerated as n0, n1, ...
std::string write_network(const Network& net);

Network load_network_file(const std::string& path);

} // namespace st
