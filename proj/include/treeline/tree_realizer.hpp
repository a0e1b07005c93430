#ifndef TREELINE_TREE_REALIZER_HPP
#define TREELINE_TREE_REALIZER_HPP

#include <optional>
#include <variant>

#include "treeline/checkers.hpp"
#include "treeline/core.hpp"

// Realizing a set family as subtrees of a tree on its ground set.  The
// algorithm: adjoin the full ground set, check the Helly and chordality
// conditions, then greedily add 2-element sets while both conditions survive.
// Once no more fit, the 2-element members span the ground set and any
// breadth-first spanning tree of them realizes every input set.

namespace treeline {

// A family that contains its full ground set as a member, passes the triple
// Helly check, and has a chordal intersection graph.  Checked on
// construction.
class Fleet {
 public:
  explicit Fleet(SetFamily family);

  const SetFamily& family() const { return family_; }
  const GroundSet& ground() const { return family_.ground(); }
  // 2-element member sets as index pairs (i < j), sorted.
  const std::vector<std::pair<int, int>>& edge_ships() const { return edge_ships_; }

 private:
  SetFamily family_;
  std::vector<std::pair<int, int>> edge_ships_;
};

// A nonempty intersection of member sets whose induced 2-element-set graph
// falls apart.  Maximally extended fleets never have one.
struct DisconnectedMeeting {
  std::vector<std::string> generators;  // names; their intersection is the meeting
  std::vector<std::string> meeting;
  std::vector<std::vector<std::string>> parts;  // >= 2 connected components
};

using RealizeTreeResult = std::variant<Tree, HellyViolation, ChordlessCycle>;

// Returns a tree on the family's ground set in which every member set
// induces a subtree, or the certificate that rules one out.  Requires a
// nonempty ground set.
RealizeTreeResult realize_tree(const SetFamily& f);

// Greedy lexicographic scan: for each 2-element subset not already a member,
// commit it when the extended family still passes both checks.  A pair
// rejected once can never become valid later, so one pass reaches a fleet to
// which no further 2-element set can be added.
Fleet extend_fleet_maximally(const Fleet& fleet);

// Inclusion-wise minimal disconnected meeting, or nullopt.
std::optional<DisconnectedMeeting> find_disconnected_meeting(const Fleet& fleet);

// Breadth-first spanning tree of the 2-element members, rooted at the
// smallest label, neighbours explored in label order.  Throws Error when the
// edge-ship graph does not span the ground set.
Tree spanning_tree_of_edge_ships(const Fleet& fleet);

bool verify_disconnected_meeting(const Fleet& fleet, const DisconnectedMeeting& m);

}  // namespace treeline

#endif
