#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "st/network.hpp"
#include "st/transform.hpp"
#include "st/verify.hpp"

namespace st {

/// A weak ordering of variables by event time: equality groups from first to
/// last. Members inside a group are kept sorted by name; the canonical
/// rendering joins members with '=' and groups with '<' ("b=c<a").
struct Sequence {
  std::vector<std::vector<std::string>> groups;

  std::string render() const;
  /// Inverse of render; accepts members in any order. Throws
  /// std::invalid_argument on malformed text.
  static Sequence parse(std::string_view text);

  bool operator==(const Sequence&) const = default;
};

/// All weak orderings of the given variables (1..5 of them), ordered
/// lexicographically by canonical rendering. Counts follow the Fubini
/// numbers: 1, 3, 13, 75, 541.
std::vector<Sequence> enumerate_sequences(const std::vector<std::string>& variables);

struct SequenceRow {
  Sequence seq;
  std::optional<std::size_t> output; // group index whose time the function emits
  bool operator==(const SequenceRow&) const = default;
};

/// The temporal analogue of a truth table: one row per weak ordering of the
/// variables, each mapped to an output group or to "never".
struct SequenceTable {
  std::vector<std::string> variables;
  std::vector<SequenceRow> rows;
  bool operator==(const SequenceTable&) const = default;
};

/// Tabulate a delay-free single-output network: bind each row's groups to
/// representative times (0,1,2,... and the spread 0,2,4,...), evaluate, and
/// map the output time back to its group. Throws std::invalid_argument on a
/// delayed / multi-output / oversized network, std::runtime_error if the two
/// representative assignments disagree ("not sequence-determined").
SequenceTable build_table(const Network& net);

/// Necessary causality condition: every finite output group must be the last
/// or next-to-last group of its row. The failure detail names the first
/// offending row.
CheckReport validate_table(const SequenceTable& table);
bool output_near_end(const SequenceRow& row);

/// One endpoint of a relational term: a variable observed k ticks late.
struct Operand {
  std::string var;
  std::uint64_t k = 0;
  auto operator<=>(const Operand&) const = default;
};

enum class Rel { Lt, Eq, Le };

struct Term {
  Operand lhs;
  Rel rel = Rel::Lt;
  Operand rhs;
  bool operator==(const Term&) const = default;
};

/// A max-combined chain of relational terms, plus optional bare-variable
/// markers (a trailing "v < inf", which reduces to v itself). Satisfied --
/// non-infinite -- exactly when its ordering pattern occurs.
struct Implicant {
  std::vector<Term> terms;
  std::vector<Operand> markers;
  bool operator==(const Implicant&) const = default;
};

/// The implicant that is satisfied exactly on one row's ordering pattern:
/// equality chains inside each group, '<' between consecutive group
/// representatives (first-listed members), and an occurrence marker when the
/// output group is the final group and a singleton. Throws on a never-row.
Implicant minterm_of(const SequenceRow& row);

/// True iff the term constraints admit a weak ordering: no strict cycle and
/// no '<' between operands forced equal.
bool implicant_consistent(const Implicant& imp);

/// Merge pairs of implicants identical except for one term where one side
/// has '<' and the other has '=': both are replaced by a single implicant
/// with the weak relation at that term. Runs to a fixpoint; the min over the
/// result equals the min over the input everywhere.
std::vector<Implicant> merge_le(std::vector<Implicant> imps);

/// Drop relational terms between delayed copies of one origin when they are
/// always true (a+i < a+j with i < j), and drop whole implicants containing
/// one that is never true. Operands must name expanded inputs of the given
/// assignment and are rewritten to (origin, k) form.
std::vector<Implicant> simplify_delayed_relations(std::vector<Implicant> imps,
                                                  const DelayAssignment& taps);

/// Min over implicants of max over term networks. `variables` fixes the
/// input set and order; an empty implicant list yields the always-never
/// network over those variables.
Network synthesize_standard(const std::vector<Implicant>& imps,
                            const std::vector<std::string>& variables);

/// Min over the minterms of every finite row. Requires validate_table to
/// pass.
Network synthesize_canonical(const SequenceTable& table);

/// Full pipeline for an arbitrary single-output network: split off input
/// delays, tabulate the delay-free residual, synthesize its canonical form,
/// then re-substitute the delayed inputs and simplify relations between
/// delayed copies of one origin (value-preserving: an always-true term is
/// replaced by the marker carrying its value). The result evaluates
/// identically to the input network.
struct CanonicalResult {
  DelayAssignment taps;
  SequenceTable table;
  Network net;
};

CanonicalResult canonicalize(const Network& net, std::size_t budget = 100000);

/// Sequence-table file: `vars a b c`, rows `a<b=c -> inf` / `b=c<a -> a`
/// (the output group named by any member), `#` comments. Rows may be sparse;
/// missing rows default to never. Throws ParseError with line numbers.
SequenceTable read_table(std::string_view text);
std::string write_table(const SequenceTable& table);
SequenceTable load_table_file(const std::string& path);

} // namespace st
