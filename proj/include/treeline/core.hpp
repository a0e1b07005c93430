#ifndef TREELINE_CORE_HPP
#define TREELINE_CORE_HPP

#include <boost/dynamic_bitset.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

// Core value types: ground sets of opaque string labels, named set families
// over a ground set, simple graphs, trees and orderings.  Everything is
// immutable after construction and all operations are pure functions, so any
// value can be shared freely across threads.

namespace treeline {

// Member masks are indexed by position in the canonical (sorted) label order
// of the owning GroundSet.
using Bitset = boost::dynamic_bitset<>;

std::vector<int> bit_indices(const Bitset& b);

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parse failure.  Syntax errors carry 1-based line/column; semantic errors
// (unknown label, duplicate name) carry a path such as "sets.s1[2]".
struct ParseError : Error {
  ParseError(const std::string& msg, int line, int col);
  ParseError(const std::string& msg, std::string path);

  int line = 0;  // 0 when only a path is known
  int col = 0;
  std::string path;
};

// A finite set of distinct labels, kept sorted.  Label indices used
// throughout the library refer to positions in this canonical order.
class GroundSet {
 public:
  GroundSet() = default;
  explicit GroundSet(std::vector<std::string> labels);

  int size() const { return static_cast<int>(labels_.size()); }
  bool empty() const { return labels_.empty(); }
  const std::string& label(int i) const { return labels_.at(i); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<int> index_of(std::string_view label) const;
  bool contains(std::string_view label) const { return index_of(label).has_value(); }

  std::vector<std::string> labels_of(const Bitset& members) const;
  // Throws Error when a name is not a ground element.
  Bitset subset_of(const std::vector<std::string>& members) const;
  Bitset none() const { return Bitset(labels_.size()); }
  Bitset all() const { return ~Bitset(labels_.size()); }

  bool operator==(const GroundSet&) const = default;

 private:
  std::vector<std::string> labels_;
};

struct FamilySet {
  std::string name;
  Bitset members;

  bool operator==(const FamilySet&) const = default;
};

// A family of named subsets of a common ground set.  Names are distinct and
// the sets are kept sorted by name.  Empty and duplicate member sets are
// representable; the checkers flag them where they matter.
class SetFamily {
 public:
  SetFamily() = default;
  SetFamily(GroundSet ground, std::vector<FamilySet> sets);
  SetFamily(GroundSet ground,
            const std::vector<std::pair<std::string, std::vector<std::string>>>& sets);

  const GroundSet& ground() const { return ground_; }
  int size() const { return static_cast<int>(sets_.size()); }
  const FamilySet& set(int i) const { return sets_.at(i); }
  const std::vector<FamilySet>& sets() const { return sets_; }
  std::optional<int> index_of(std::string_view name) const;
  std::vector<std::string> member_labels(int i) const;

  bool operator==(const SetFamily&) const = default;

 private:
  GroundSet ground_;
  std::vector<FamilySet> sets_;  // sorted by name
};

// Finite simple graph on a GroundSet of vertex labels.  Edges are stored as
// index pairs (i < j) in sorted order; loops and parallel edges are rejected.
class Graph {
 public:
  Graph() = default;
  Graph(GroundSet vertices, std::vector<std::pair<int, int>> edges);
  Graph(GroundSet vertices,
        const std::vector<std::pair<std::string, std::string>>& edges);

  const GroundSet& vertices() const { return vertices_; }
  int n() const { return vertices_.size(); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  std::vector<std::pair<std::string, std::string>> edge_labels() const;
  bool adjacent(int u, int v) const { return u != v && adj_.at(u).test(v); }
  // Neighbour mask of v (never includes v itself).
  const Bitset& neighbors(int v) const { return adj_.at(v); }

  bool operator==(const Graph&) const = default;

 private:
  GroundSet vertices_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<Bitset> adj_;
};

// A connected acyclic Graph with at least one vertex.
class Tree {
 public:
  explicit Tree(Graph g);

  const Graph& graph() const { return g_; }
  const GroundSet& vertices() const { return g_.vertices(); }

  bool operator==(const Tree&) const = default;

 private:
  Graph g_;
};

// A permutation of a GroundSet, stored as the sequence of label indices.
class Ordering {
 public:
  Ordering() = default;
  Ordering(GroundSet ground, std::vector<int> sequence);
  Ordering(GroundSet ground, const std::vector<std::string>& labels);

  const GroundSet& ground() const { return ground_; }
  int size() const { return static_cast<int>(seq_.size()); }
  const std::vector<int>& sequence() const { return seq_; }
  std::vector<std::string> labels() const;
  // positions()[v] = rank of label index v in the sequence
  std::vector<int> positions() const;
  Ordering reversed() const;

  bool operator==(const Ordering&) const = default;

 private:
  GroundSet ground_;
  std::vector<int> seq_;
};

// --- file formats -----------------------------------------------------------
//
// Family files are JSON: {"ground": [label...], "sets": {name: [label...]}}.
// Graph files are text: a "vertices: a b c" header line followed by one
// "u v" edge per line; blank lines and lines starting with '#' are skipped.
// Serialization is canonical (sorted labels, names and edges), so
// serialize(parse(x)) is a byte-level fixpoint.

SetFamily parse_family(std::string_view text);
std::string serialize_family(const SetFamily& f);

Graph parse_graph(std::string_view text);
std::string serialize_graph(const Graph& g);

// --- derived structures -----------------------------------------------------

// Vertices are the set names; an edge joins two names whose sets intersect.
Graph intersection_graph(const SetFamily& f);

// Number of connected components of the subgraph of t induced on the given
// vertex subset (0 for the empty subset).
int induced_component_count(const Tree& t, const Bitset& subset);
int induced_component_count(const Tree& t, const std::vector<std::string>& subset);

struct ValidationReport {
  // Nonempty sets of the family that do not induce a subtree.
  std::vector<std::string> not_subtrees;
  // Empty member sets; they never fail validation but callers may care.
  std::vector<std::string> empty_sets;

  bool ok() const { return not_subtrees.empty(); }
};

// Checks that every nonempty set of f induces a connected subgraph of t.
// Throws Error when t's vertex set differs from f's ground set.
ValidationReport validate_subtree_representation(const Tree& t, const SetFamily& f);

}  // namespace treeline

#endif
