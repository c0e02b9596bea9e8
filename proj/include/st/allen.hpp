#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "st/network.hpp"
#include "st/time.hpp"
#include "st/verify.hpp"

namespace st {

/// The thirteen qualitative orderings of two intervals: six forward
/// relations and their inverses, plus equality.
enum class AllenRelation {
  Before,
  After,
  Meets,
  MetBy,
  Overlaps,
  OverlappedBy,
  Starts,
  StartedBy,
  During,
  Contains,
  Finishes,
  FinishedBy,
  Equals,
};

inline constexpr std::array<AllenRelation, 13> all_allen_relations = {
    AllenRelation::Before,   AllenRelation::After,        AllenRelation::Meets,
    AllenRelation::MetBy,    AllenRelation::Overlaps,     AllenRelation::OverlappedBy,
    AllenRelation::Starts,   AllenRelation::StartedBy,    AllenRelation::During,
    AllenRelation::Contains, AllenRelation::Finishes,     AllenRelation::FinishedBy,
    AllenRelation::Equals,
};

const char* allen_relation_name(AllenRelation rel);
AllenRelation allen_relation_from_name(const std::string& name);

/// Event network over inputs Xs, Xf, Ys, Yf whose output is non-"never"
/// exactly when the relation holds between the intervals; the value is the
/// earliest time satisfaction is known. Inverse relations swap X and Y.
Network encode(AllenRelation rel);

/// An interval given by its start and finish events.
struct IntervalEvents {
  Time s;
  Time f;
};

/// Evaluate an encoded relation on concrete endpoints. Rejects degenerate
/// intervals (finite start not strictly before finite finish).
Time eval_intervals(AllenRelation rel, IntervalEvents x, IntervalEvents y);

/// Pairs (start name, finish name) read off the naming convention: any
/// input "<stem>s" with a sibling "<stem>f" declares an interval.
std::vector<std::pair<std::string, std::string>> interval_constraints(
    const std::vector<std::string>& names);

/// Lexicographically smallest binding over {0..h.T, never} that satisfies
/// the single-output network while respecting every declared start<finish
/// constraint, or nothing when no such binding exists within the horizon.
std::optional<Binding> satisfiable(
    const Network& net, const Horizon& h,
    const std::vector<std::pair<std::string, std::string>>& constraints);

/// Order classes ('<', '=', '>') realized between two named events across
/// all satisfying bindings within the horizon. A singleton is the strongest
/// implied relation; the empty set means unsatisfiable within the horizon.
std::set<char> strongest_implied(
    const Network& net, const Horizon& h, const std::string& u, const std::string& v,
    const std::vector<std::pair<std::string, std::string>>& constraints);

/// Event-time bindings from name=value pairs. Values are plain times, or
/// H:MM clock readings; one clock reading switches the whole set to clock
/// mode, where every value must be a clock and is rebased to minutes after
/// the earliest reading.
Binding parse_event_bindings(const std::vector<std::pair<std::string, std::string>>& entries);

} // namespace st
