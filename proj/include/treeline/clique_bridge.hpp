#ifndef TREELINE_CLIQUE_BRIDGE_HPP
#define TREELINE_CLIQUE_BRIDGE_HPP

#include <map>
#include <variant>

#include "treeline/checkers.hpp"
#include "treeline/interval_realizer.hpp"
#include "treeline/tree_realizer.hpp"

// Graph-side applications of the two realizers: subtree-intersection
// representations of chordal graphs over their maximal cliques, clique
// orderings as path decompositions, and an exact small-graph path-width
// oracle for cross-validation.

namespace treeline {

// Bags indexed left to right along a line.  Valid when every vertex and
// every edge appears in some bag and each vertex's bag indices form a
// contiguous run.
struct PathDecomposition {
  Graph graph;
  std::vector<std::vector<std::string>> bags;
};

// kind is one of "vertex-coverage" (vertices = the uncovered vertex),
// "edge-coverage" (vertices = the uncovered edge), "contiguity" (vertices =
// the vertex, bag_indices = 0-based i < j < k with the vertex present at i
// and k but absent at j).
struct DecompositionViolation {
  std::string kind;
  std::vector<std::string> vertices;
  std::vector<int> bag_indices;
  bool operator==(const DecompositionViolation&) const = default;
};

// Host tree on the maximal cliques of a chordal graph; subtrees maps each
// graph vertex to the host vertices (cliques) containing it.
struct SubtreeRepresentation {
  Tree host;
  std::map<std::string, std::vector<std::string>> subtrees;
};

// Maximal cliques of a chordal graph, each a sorted label list, the list
// itself sorted; at most |V| of them.  Non-chordal input yields the cycle.
std::variant<std::vector<std::vector<std::string>>, ChordlessCycle>
maximal_cliques_chordal(const Graph& g);

// Realizes a chordal graph as intersecting subtrees of a tree on its maximal
// cliques.  Both representation invariants (subtree connectivity and
// intersection-equals-adjacency) are verified before returning.
std::variant<SubtreeRepresentation, ChordlessCycle> subtree_representation(
    const Graph& g);

// Width (max bag size minus one) when the three conditions hold, else the
// first violation in scan order: vertex coverage, edge coverage, contiguity.
// A bag label outside the graph raises Error.  No vertices and no bags give
// width -1.
std::variant<int, DecompositionViolation> verify_path_decomposition(
    const PathDecomposition& d);

using LineDecompositionResult =
    std::variant<PathDecomposition, ObstructionTriple, ChordlessCycle>;

// Orders the maximal cliques of a chordal graph so every vertex's cliques
// are consecutive; the cliques in that order are the bags.  An interval
// obstruction on the clique family or a chordless cycle is returned instead
// when the graph does not admit this.  A graph with no vertices yields one
// empty bag.
LineDecompositionResult line_decomposition_from_cliques(const Graph& g);

// Exact path width by dynamic programming over vertex subsets, |V| <= 15.
// The empty graph has width -1.  The witness decomposition is rebuilt and
// verified on every call.
int pathwidth_bruteforce(const Graph& g);

// The witness behind pathwidth_bruteforce: a decomposition of minimum width.
PathDecomposition optimal_path_decomposition(const Graph& g);

}  // namespace treeline

#endif
