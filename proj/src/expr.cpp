#include "st/expr.hpp"

#include <cctype>

namespace st {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

struct Parser {
  std::string_view text;
  std::size_t pos = 0;
  Network net;

  [[noreturn]] void fail(const std::string& msg, std::size_t at) { throw ParseError(msg, at); }

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  std::string ident() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && ident_char(text[pos])) ++pos;
    return std::string(text.substr(start, pos - start));
  }

  std::uint64_t natural() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) fail("expected a number", start);
    return parse_time(text.substr(start, pos - start)).value();
  }

  // rel_op consumes "<", "<=", ...; returns false if none follows
  bool rel_op(OpKind& out) {
    skip_ws();
    if (pos >= text.size()) return false;
    char c = text[pos];
    char next = pos + 1 < text.size() ? text[pos + 1] : '\0';
    if (c == '<') { out = next == '=' ? OpKind::Le : OpKind::Lt; pos += next == '=' ? 2 : 1; return true; }
    if (c == '>') { out = next == '=' ? OpKind::Ge : OpKind::Gt; pos += next == '=' ? 2 : 1; return true; }
    if (c == '=' && next == '=') { out = OpKind::Eq; pos += 2; return true; }
    if (c == '!' && next == '=') { out = OpKind::Ne; pos += 2; return true; }
    return false;
  }

  NodeId primary() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end of expression", pos);
    char c = text[pos];
    if (c == '(') {
      ++pos;
      NodeId e = or_level();
      if (!eat(')')) fail("expected ')'", pos);
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)))
      fail("numeric literal outside a delay", pos);
    if (!ident_start(c)) fail(std::string("unexpected character '") + c + "'", pos);
    std::size_t start = pos;
    std::string name = ident();
    if (name == "inf") fail("'inf' is only valid in bindings, not expressions", start);
    if (name == "xmin" || name == "xmax") {
      if (!eat('(')) fail("expected '(' after '" + name + "'", pos);
      NodeId a = or_level();
      if (!eat(',')) fail("expected ',' in '" + name + "(...)'", pos);
      NodeId b = or_level();
      if (!eat(')')) fail("expected ')'", pos);
      return net.add_binary(name == "xmin" ? OpKind::XMin : OpKind::XMax, a, b);
    }
    return net.add_input(name);
  }

  NodeId delay_level() {
    NodeId e = primary();
    while (eat('+')) e = net.add_delay(e, natural());
    return e;
  }

  NodeId rel_level() {
    NodeId lhs = delay_level();
    OpKind op;
    std::size_t at = pos;
    if (!rel_op(op)) return lhs;
    NodeId rhs = delay_level();
    at = pos;
    skip_ws();
    OpKind trailing;
    std::size_t probe = pos;
    if (rel_op(trailing))
      fail("relational operators are non-associative; parenthesize the chain", probe);
    pos = at;
    return net.add_binary(op, lhs, rhs);
  }

  NodeId and_level() {
    NodeId e = rel_level();
    while (eat('&')) e = net.add_binary(OpKind::Min, e, rel_level());
    return e;
  }

  NodeId or_level() {
    NodeId e = and_level();
    while (true) {
      skip_ws();
      // don't confuse '|' with a hypothetical '||'
      if (pos < text.size() && text[pos] == '|') {
        ++pos;
        e = net.add_binary(OpKind::Max, e, and_level());
        continue;
      }
      return e;
    }
  }
};

enum Level { LvlOr = 0, LvlAnd, LvlRel, LvlDelay, LvlAtom };

Level node_level(const Network& net, NodeId id) {
  const Node& n = net.nodes[id];
  switch (n.kind) {
    case NodeKind::Input: return LvlAtom;
    case NodeKind::Delay: return LvlDelay;
    case NodeKind::Binary:
      switch (n.op) {
        case OpKind::Min: return LvlAnd;
        case OpKind::Max: return LvlOr;
        case OpKind::XMin:
        case OpKind::XMax: return LvlAtom; // function call form
        default: return LvlRel;
      }
  }
  return LvlAtom;
}

void render(const Network& net, NodeId id, Level context, bool right_operand, std::string& out) {
  Level lvl = node_level(net, id);
  // same-level right operands and relational operands keep their parentheses
  bool parens = lvl < context || (lvl == context && (right_operand || context == LvlRel));
  if (parens) out += '(';
  const Node& n = net.nodes[id];
  switch (n.kind) {
    case NodeKind::Input: out += net.inputs[n.slot]; break;
    case NodeKind::Delay:
      render(net, n.src, LvlDelay, false, out);
      out += " + ";
      out += std::to_string(n.k);
      break;
    case NodeKind::Binary:
      if (n.op == OpKind::XMin || n.op == OpKind::XMax) {
        out += n.op == OpKind::XMin ? "xmin(" : "xmax(";
        render(net, n.lhs, LvlOr, false, out);
        out += ", ";
        render(net, n.rhs, LvlOr, false, out);
        out += ')';
      } else {
        Level lvl2 = node_level(net, id);
        render(net, n.lhs, lvl2, false, out);
        out += ' ';
        out += op_token(n.op);
        out += ' ';
        render(net, n.rhs, lvl2, true, out);
      }
      break;
  }
  if (parens) out += ')';
}

} // namespace

Network parse_expr(std::string_view text) {
  Parser p;
  p.text = text;
  NodeId root = p.or_level();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input after expression", p.pos);
  p.net.add_output(root);
  return std::move(p.net);
}

std::string format_expr(const Network& net, NodeId id) {
  std::string out;
  render(net, id, LvlOr, false, out);
  return out;
}

std::string format_expr(const Network& net) {
  if (net.outputs.size() != 1)
    throw std::invalid_argument("st::format_expr: network is not single-output");
  return format_expr(net, net.outputs[0]);
}

} // namespace st
