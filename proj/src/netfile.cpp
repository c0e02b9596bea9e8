#include "st/netfile.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "st/expr.hpp"
#include "st/ops.hpp"

namespace st {
namespace {

bool valid_ident(std::string_view s) {
  if (s.empty() || s == "inf") return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
  throw ParseError("line " + std::to_string(line) + ": " + msg, line);
}

} // namespace

Network read_network(std::string_view text) {
  Network net;
  std::map<std::string, NodeId, std::less<>> defined;
  bool any_output = false;

  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream t{line};
    std::vector<std::string> tok;
    for (std::string w; t >> w;) tok.push_back(w);
    if (tok.empty()) continue;

    auto resolve = [&](const std::string& name) -> NodeId {
      auto it = defined.find(name);
      if (it == defined.end()) fail(line_no, "undefined operand '" + name + "'");
      return it->second;
    };

    if (tok[0] == "input") {
      if (tok.size() != 2) fail(line_no, "expected 'input <name>'");
      if (!valid_ident(tok[1])) fail(line_no, "invalid input name '" + tok[1] + "'");
      if (defined.count(tok[1])) fail(line_no, "'" + tok[1] + "' is already defined");
      defined.emplace(tok[1], net.add_input(tok[1]));
    } else if (tok[0] == "output") {
      if (tok.size() != 2) fail(line_no, "expected 'output <id>'");
      net.add_output(resolve(tok[1]));
      any_output = true;
    } else {
      if (tok.size() < 2 || tok[1] != "=") fail(line_no, "expected '<id> = ...'");
      if (!valid_ident(tok[0])) fail(line_no, "invalid node id '" + tok[0] + "'");
      if (defined.count(tok[0])) fail(line_no, "'" + tok[0] + "' is already defined");
      if (tok.size() != 5) fail(line_no, "expected '<id> = <op> <arg> <arg>'");
      NodeId id;
      if (tok[2] == "delay") {
        NodeId src = resolve(tok[3]);
        Time k_time;
        try {
          k_time = parse_time(tok[4]);
        } catch (const std::exception&) {
          fail(line_no, "invalid delay amount '" + tok[4] + "'");
        }
        if (k_time.is_infinite()) fail(line_no, "delay amount must be finite");
        std::uint64_t k = k_time.value();
        id = net.add_delay(src, k);
      } else {
        auto op = op_from_name(tok[2]);
        if (!op) fail(line_no, "unknown operator '" + tok[2] + "'");
        id = net.add_binary(*op, resolve(tok[3]), resolve(tok[4]));
      }
      defined.emplace(tok[0], id);
    }
  }
  if (net.arity() == 0) fail(line_no ? line_no : 1, "network declares no inputs");
  if (!any_output) fail(line_no ? line_no : 1, "network declares no outputs");
  return net;
}

std::string write_network(const Network& net) {
  std::ostringstream out;
  std::vector<std::string> name(net.nodes.size());
  std::set<std::string> taken;
  for (NodeId i = 0; i < net.nodes.size(); ++i) {
    const Node& n = net.nodes[i];
    if (n.kind == NodeKind::Input) {
      name[i] = net.inputs[n.slot];
      taken.insert(name[i]);
      out << "input " << name[i] << '\n';
    }
  }
  std::size_t next = 0;
  for (NodeId i = 0; i < net.nodes.size(); ++i) {
    const Node& n = net.nodes[i];
    if (n.kind == NodeKind::Input) continue;
    do name[i] = "n" + std::to_string(next++);
    while (taken.count(name[i]));
    if (n.kind == NodeKind::Delay)
      out << name[i] << " = delay " << name[n.src] << ' ' << n.k << '\n';
    else
      out << name[i] << " = " << op_name(n.op) << ' ' << name[n.lhs] << ' ' << name[n.rhs]
          << '\n';
  }
  for (NodeId o : net.outputs) out << "output " << name[o] << '\n';
  return out.str();
}

Network load_network_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'", 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  return read_network(buf.str());
}

} // namespace st
