#ifndef TREELINE_INTERVAL_REALIZER_HPP
#define TREELINE_INTERVAL_REALIZER_HPP

#include <array>
#include <optional>
#include <variant>

#include "treeline/core.hpp"

// Realizing a set family as intervals of a linear order on the ground set.
// An order exists iff no obstruction triple does: three elements that are
// pairwise joined by connected sets avoiding the third.  On the positive
// side the order is assembled from overlap classes of the member sets; the
// union of each class is rigid up to reversal, and distinct class unions
// nest laminarly.

namespace treeline {

// X is connected (relative to the family) when every 2-partition of X is
// crossed by a member set contained in X.
struct SplitWitness {
  std::vector<std::string> side_a;  // no member set inside X meets both sides
  std::vector<std::string> side_b;
};

// Three vertices v_1, v_2, v_3 with witness sets X_1, X_2, X_3 such that
// v_i lies in X_j exactly when i != j and each X_j is connected relative to
// the family.  No linear order can make every member set an interval.
struct ObstructionTriple {
  std::array<std::string, 3> vertices;
  std::array<std::vector<std::string>, 3> witnesses;
  bool operator==(const ObstructionTriple&) const = default;
};

// nullopt = connected; otherwise an uncrossed 2-partition of X.
std::optional<SplitWitness> is_f_connected(const SetFamily& f, const Bitset& x);
std::optional<SplitWitness> is_f_connected(const SetFamily& f,
                                           const std::vector<std::string>& x);

// Partition of X into its maximal connected subsets, ordered by smallest
// element.  Every member set inside X lies within a single block.
std::vector<std::vector<std::string>> f_connected_components(const SetFamily& f,
                                                             const Bitset& x);
std::vector<std::vector<std::string>> f_connected_components(
    const SetFamily& f, const std::vector<std::string>& x);

// First obstruction triple in lexicographic vertex order, with the witnesses
// taken as connectivity blocks of the ground set minus one vertex.
std::optional<ObstructionTriple> find_obstruction_triple(const SetFamily& f);

using RealizeOrderResult = std::variant<Ordering, ObstructionTriple>;

// An ordering of the ground set making every member set consecutive, or the
// obstruction triple that rules one out.  Of the ordering and its mirror
// image, the lexicographically smaller label sequence is returned.
RealizeOrderResult realize_interval_order(const SetFamily& f);

// Reference implementation: first valid permutation in lexicographic order.
// Guarded to |W| <= 9.
std::optional<Ordering> brute_force_order(const SetFamily& f);

bool verify_interval_ordering(const SetFamily& f, const Ordering& ord);
bool verify_obstruction_triple(const SetFamily& f, const ObstructionTriple& t);

}  // namespace treeline

#endif
