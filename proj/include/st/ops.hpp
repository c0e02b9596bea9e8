#pragma once

#include <optional>
#include <string_view>

#include "st/time.hpp"

namespace st {

/// The ten primitive 2-ary operators. Each outputs one of its operands or
/// infinity; relational kinds output the first operand when the relation
/// holds and infinity when it does not.
enum class OpKind { Min, Max, XMin, XMax, Lt, Le, Gt, Ge, Eq, Ne };

inline constexpr OpKind all_op_kinds[] = {
    OpKind::Min, OpKind::Max, OpKind::XMin, OpKind::XMax, OpKind::Lt,
    OpKind::Le,  OpKind::Gt,  OpKind::Ge,   OpKind::Eq,   OpKind::Ne,
};

constexpr Time binary(OpKind kind, Time a, Time b) {
  switch (kind) {
    case OpKind::Min: return a < b ? a : b < a ? b : a;
    case OpKind::Max: return a < b ? b : b < a ? a : a;
    // exclusive variants drop the tie instead of passing it through
    case OpKind::XMin: return a < b ? a : b < a ? b : Time::infinity();
    case OpKind::XMax: return a < b ? b : b < a ? a : Time::infinity();
    case OpKind::Lt: return a < b ? a : Time::infinity();
    case OpKind::Le: return a <= b ? a : Time::infinity();
    case OpKind::Gt: return a > b ? a : Time::infinity();
    case OpKind::Ge: return a >= b ? a : Time::infinity();
    case OpKind::Eq: return a == b ? a : Time::infinity();
    case OpKind::Ne: return a != b ? a : Time::infinity();
  }
  throw std::logic_error("st::binary: bad OpKind");
}

/// Note: Ne is not commutative; it returns whichever operand comes first.
constexpr bool is_commutative(OpKind kind) {
  switch (kind) {
    case OpKind::Min:
    case OpKind::Max:
    case OpKind::XMin:
    case OpKind::XMax:
    case OpKind::Eq: return true;
    default: return false;
  }
}

/// Lowercase mnemonic used in network files and diagnostics.
constexpr std::string_view op_name(OpKind kind) {
  switch (kind) {
    case OpKind::Min: return "min";
    case OpKind::Max: return "max";
    case OpKind::XMin: return "xmin";
    case OpKind::XMax: return "xmax";
    case OpKind::Lt: return "lt";
    case OpKind::Le: return "le";
    case OpKind::Gt: return "gt";
    case OpKind::Ge: return "ge";
    case OpKind::Eq: return "eq";
    case OpKind::Ne: return "ne";
  }
  return "?";
}

inline std::optional<OpKind> op_from_name(std::string_view name) {
  for (OpKind k : all_op_kinds)
    if (op_name(k) == name) return k;
  return std::nullopt;
}

/// Infix token in the expression grammar; XMin/XMax have none (function form).
constexpr std::string_view op_token(OpKind kind) {
  switch (kind) {
    case OpKind::Min: return "&";
    case OpKind::Max: return "|";
    case OpKind::Lt: return "<";
    case OpKind::Le: return "<=";
    case OpKind::Gt: return ">";
    case OpKind::Ge: return ">=";
    case OpKind::Eq: return "==";
    case OpKind::Ne: return "!=";
    default: return "";
  }
}

} // namespace st
