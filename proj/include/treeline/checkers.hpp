#ifndef TREELINE_CHECKERS_HPP
#define TREELINE_CHECKERS_HPP

#include <optional>
#include <variant>

#include "treeline/core.hpp"

// Validity checkers for set families, with certificates for every negative
// answer.  Certificates can always be re-verified from first principles via
// the verify_* helpers below; the CLI does so before printing one.

namespace treeline {

// A pairwise-intersecting subfamily with empty total intersection.  An empty
// member set shows up as the one-set violation {S}.
struct HellyViolation {
  std::vector<std::string> witness_sets;  // names, in canonical family order
  bool operator==(const HellyViolation&) const = default;
};

// An induced cycle of length >= 4, in traversal order, rotated so the
// smallest vertex comes first and its smaller neighbour second.
struct ChordlessCycle {
  std::vector<std::string> cycle;
  bool operator==(const ChordlessCycle&) const = default;
};

// Longest chain of sets whose running prefix intersection stays nonempty and
// loses at least one element at every step.
struct MeetingChainReport {
  int depth = 0;
  std::vector<std::string> chain;
};

// Triple test: for every three ground elements, the sets containing at least
// two of them must have a common element.  Equivalent to requiring that every
// pairwise-intersecting subfamily meets.  nullopt = property holds.  The
// witness is an inclusion-minimal violating subfamily.
std::optional<HellyViolation> check_helly_triples(const SetFamily& f);

// Reference implementation: scans all subfamilies by increasing cardinality
// and returns a minimum-cardinality violation.  Guarded to |F| <= 20.
std::optional<HellyViolation> check_helly_bruteforce(const SetFamily& f);

// Maximum-cardinality-search recognition: returns a perfect elimination
// ordering when the graph is chordal, otherwise a chordless cycle.
std::variant<Ordering, ChordlessCycle> check_chordal(const Graph& g);

bool is_chordal(const Graph& g);

MeetingChainReport meeting_chain_depth(const SetFamily& f);

bool verify_helly_violation(const SetFamily& f, const HellyViolation& v);
bool verify_chordless_cycle(const Graph& g, const ChordlessCycle& c);
bool verify_meeting_chain(const SetFamily& f, const std::vector<std::string>& chain);
// Every vertex's neighbours later in the ordering form a clique.
bool verify_elimination_ordering(const Graph& g, const Ordering& peo);

}  // namespace treeline

#endif
