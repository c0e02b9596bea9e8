#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "st/network.hpp"

namespace st {

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg), position(pos) {}
  std::size_t position; // byte offset for expressions, line number for files
};

/// Parse an expression into a single-output network. Inputs are registered in
/// first-appearance order. Grammar, tightest to loosest: `+ k` (delay),
/// relationals `< <= > >= == !=` (non-associative; chains need parentheses),
/// `&` (min), `|` (max); `xmin(e, e)` / `xmax(e, e)` as functions; numeric
/// literals only as delay amounts; `inf` is not valid in expressions.
Network parse_expr(std::string_view text);

/// Render a single-output network as an expression with minimal parentheses,
/// preserving structure (no reassociation). Shared subgraphs are unfolded.
std::string format_expr(const Network& net);

/// Render the subtree rooted at `id`.
std::string format_expr(const Network& net, NodeId id);

} // namespace st
